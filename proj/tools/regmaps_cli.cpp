// regmaps: census tables, per-map listings, oracle diffs and field dumps.
//
// Exit codes: 0 ok, 1 usage error, 2 validation or diff failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "regmaps/regmaps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("REGMAPS_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

// Everything is rendered into one buffer and written once.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path path = resolve_out(out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path.string());
  f << text;
}

regmaps::FieldCtx field_for(std::int64_t q) {
  if (q < 5 || !regmaps::odd_prime_power(q)) throw UsageError("q must be an odd prime power >= 5, got " + std::to_string(q));
  return regmaps::ctx_for_q(q);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular maps on PSL(2,q): census, classification and oracle checks"};
  app.require_subcommand(1);

  std::string format = "md";
  std::string listing_format = "json";
  std::string out;
  std::int64_t q = 0, q_max = 0, oracle_cap = 13;
  int k = 0, l = 0, jobs = 1;
  bool validate = false, include_subgroups = false;

  auto* table = app.add_subcommand("table", "census rows for every odd prime power q <= qmax");
  table->add_option("--qmax", q_max, "largest q")->required();
  table->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
  table->add_flag("--validate", validate, "confirm every class by witness search");
  table->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  table->add_option("--out", out, "output file (relative paths go under $REGMAPS_OUTPUT_DIR)");

  auto* classify = app.add_subcommand("classify", "list the map classes for one q");
  classify->add_option("--q", q, "field order")->required();
  classify->add_option("--k", k, "only maps of vertex type k");
  classify->add_option("--l", l, "only maps of face type l");
  classify->add_option("--format", listing_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  classify->add_flag("--validate", validate, "search witnesses and re-validate each triple");
  classify->add_flag("--include-subgroups", include_subgroups, "also list classes generating a proper subgroup");
  classify->add_option("--out", out, "output file");

  auto* oracle = app.add_subcommand("oracle", "compare the census with the brute-force oracle");
  oracle->add_option("--q", q, "field order")->required();
  oracle->add_option("--oracle-cap", oracle_cap, "largest q the oracle accepts");
  oracle->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  oracle->add_option("--out", out, "output file");

  auto* field = app.add_subcommand("field", "dump the GF(q^2) tables as JSON");
  field->add_option("--q", q, "field order")->required();
  field->add_option("--out", out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ostringstream os;
    int status = kExitOk;
    if (table->parsed()) {
      if (q_max > 81) std::cerr << "warning: rows above q=81 have no published reference\n";
      const auto mode = validate ? regmaps::ClassifyMode::validate : regmaps::ClassifyMode::conditions;
      const auto rows = regmaps::census_table(q_max, mode, jobs);
      if (format == "json") regmaps::write_census_json(os, rows);
      else if (format == "csv") regmaps::write_census_csv(os, rows);
      else regmaps::write_census_md(os, rows);
    } else if (classify->parsed()) {
      const regmaps::FieldCtx ctx = field_for(q);
      regmaps::EnumerateOptions opts;
      opts.mode = validate ? regmaps::ClassifyMode::validate : regmaps::ClassifyMode::conditions;
      opts.include_subgroups = include_subgroups;
      std::vector<regmaps::MapClass> classes;
      for (auto& c : regmaps::enumerate_maps(ctx, opts)) {
        if ((k && c.signature.k != k) || (l && c.signature.l != l)) continue;
        if (validate) {
          if (auto diag = regmaps::validate_triple(ctx, c.triple, c.signature.k, c.signature.l))
            throw regmaps::ValidationError(*diag);
        }
        classes.push_back(std::move(c));
      }
      if (listing_format == "csv") regmaps::write_listing_csv(os, ctx, classes);
      else regmaps::write_listing_json(os, ctx, classes);
    } else if (oracle->parsed()) {
      const regmaps::FieldCtx ctx = field_for(q);
      if (q > oracle_cap) throw UsageError("q=" + std::to_string(q) + " exceeds the oracle cap " + std::to_string(oracle_cap));
      regmaps::OracleOptions opts;
      opts.cap = oracle_cap;
      opts.jobs = jobs;
      const auto report = regmaps::diff_against_enumerate(ctx, opts);
      os << regmaps::to_json(report).dump(2) << '\n';
      if (!report.empty()) status = kExitFailed;
    } else if (field->parsed()) {
      os << regmaps::field_to_json(field_for(q)).dump() << '\n';
    }
    emit(os.str(), out);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const regmaps::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const regmaps::ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kExitFailed;
  }
}
