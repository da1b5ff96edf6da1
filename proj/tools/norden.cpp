// norden: run identity checks on almost anti-Hermitian structures.
//
//   norden check <spec.toml | catalog name> [--checks a,b] [--points N] [--seed S]
//                [--tol T] [--format json|md] [--connection KIND]
//   norden verify-paper [--seed S] [--points N] [--tol T] [--format json|md]
//   norden catalog [--format json|md]
//
// Exit status: 0 when every check passes, 1 when any fails or has unmet
// hypotheses, 2 on input errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "norden/norden.hpp"
#include "norden/report_io.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonOptions {
  int points = 50;
  std::uint64_t seed = 42;
  double tol = norden::kDefaultTolerance;
  std::string format = "json";
};

void emit(const norden::Json& j, const std::string& markdown, const std::string& format) {
  if (format == "md")
    std::cout << markdown;
  else
    std::cout << j.dump(2) << "\n";
}

std::vector<std::string> split_checks(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int run_check_command(const std::string& target, const std::string& checks_arg, const std::string& connection_arg,
                      const CommonOptions& opt) {
  using namespace norden;
  std::optional<ManifoldSpec> spec;
  if (find_catalog_entry(target)) {
    spec.emplace(ManifoldSpec{catalog_structure(target), std::nullopt});
  } else if (std::filesystem::exists(target)) {
    spec.emplace(load_manifold_spec(target));
  } else {
    throw InvalidInputError("'" + target + "' is neither a catalog structure nor a readable file");
  }
  const Structure& s = spec->structure;

  std::vector<std::string> ids = checks_arg.empty() ? std::vector<std::string>{} : split_checks(checks_arg);
  if (ids.empty())
    for (const auto& c : check_registry()) ids.push_back(c.id);
  for (const auto& id : ids)
    if (!find_check(id)) throw InvalidInputError("unknown check '" + id + "'");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::optional<ConnectionField> connection;
  if (connection_arg == "default") {
    connection = spec->connection ? *spec->connection : levi_civita(s.g);
  } else {
    const auto gen = parse_generator(connection_arg);
    if (!gen) throw InvalidInputError("unknown connection kind '" + connection_arg + "'");
    connection = make_connection(*gen, s, connection_seed(opt.seed));
  }

  const SampleSet samples = sample_structure_points(s, opt.points, opt.seed);
  CheckRun run{s.name, connection->description(), {}};
  for (const auto& id : ids) run.reports.push_back(run_check(id, s, &*connection, samples, opt.tol));
  emit(to_json(run), to_markdown(run), opt.format);
  for (const auto& r : run.reports)
    if (!r.passed()) return kExitFail;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identity checks for almost anti-Hermitian structures"};
  app.require_subcommand(1);

  CommonOptions check_opt, paper_opt;
  std::string target, checks_arg, connection_arg = "default", catalog_format = "md";

  auto add_common = [](CLI::App* sub, CommonOptions& o) {
    sub->add_option("--points", o.points, "sample points")->check(CLI::Range(1, 100000));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "md"}));
  };

  CLI::App* check = app.add_subcommand("check", "run named checks on a structure");
  check->add_option("structure", target, "description file or catalog name")->required();
  check->add_option("--checks", checks_arg, "comma-separated check ids (default: all)");
  check->add_option("--connection", connection_arg,
                    "default | levi-civita | zero | random | codazzi | j-invariant | j-invariant-codazzi");
  add_common(check, check_opt);

  CLI::App* paper = app.add_subcommand("verify-paper", "run every check over the catalog");
  add_common(paper, paper_opt);

  CLI::App* cat = app.add_subcommand("catalog", "list built-in structures");
  cat->add_option("--format", catalog_format, "output format")->check(CLI::IsMember({"json", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*check) return run_check_command(target, checks_arg, connection_arg, check_opt);
    if (*paper) {
      const norden::PaperSummary s = norden::verify_paper(paper_opt.seed, paper_opt.points, paper_opt.tol);
      emit(norden::to_json(s), norden::to_markdown(s), paper_opt.format);
      return s.all_passed() ? 0 : kExitFail;
    }
    if (*cat) {
      emit(norden::catalog_json(), norden::catalog_markdown(), catalog_format);
      return 0;
    }
  } catch (const norden::Error& e) {
    std::cerr << "norden: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
