// era — Eratosthenes-ray toolkit: prime queries, ray matrices, identity
// verification, spiral/web figure export, and sieve cache persistence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "era/cache.hpp"
#include "era/jsonio.hpp"
#include "era/primecore.hpp"
#include "era/rays.hpp"
#include "era/spiralweb.hpp"
#include "era/verify.hpp"

namespace {

using era::u64;
using nlohmann::json;

struct CliConfig {
  u64 sieve_bound = 100'000'000;          // 1e8
  u64 count_bound = 100'000'000'000;      // 1e11
  std::string format = "text";
  std::string cache_path;
};

bool json_mode(const CliConfig& cfg) { return cfg.format == "json"; }

void emit(const CliConfig& cfg, const std::string& query, json args,
          json result, const std::string& text) {
  if (json_mode(cfg))
    std::cout << json{{"query", query}, {"args", std::move(args)},
                      {"result", std::move(result)}}
                     .dump()
              << "\n";
  else
    std::cout << text;
}

era::PrimeIndexer make_indexer(const CliConfig& cfg) {
  if (!cfg.cache_path.empty()) {
    std::string why;
    if (auto cache = era::read_sieve_cache(cfg.cache_path, &why)) {
      if (cache->sieve_bound == cfg.sieve_bound)
        return era::PrimeIndexer::from_sieve_words(
            cache->sieve_bound, cfg.count_bound, std::move(cache->words));
      std::cerr << "era: cache ignored: sieve_bound mismatch (cached "
                << cache->sieve_bound << ", configured " << cfg.sieve_bound
                << "); building fresh\n";
    } else {
      std::cerr << "era: cache rejected (" << why << "); building fresh\n";
    }
  }
  return era::PrimeIndexer::build(cfg.sieve_bound, cfg.count_bound);
}

std::string matrix_text(const era::RayMatrix& matrix) {
  std::size_t max_cols = 0;
  for (const era::Ray& row : matrix.rows())
    max_cols = std::max(max_cols, row.elements.size());
  std::vector<std::size_t> width(max_cols, 0);
  for (const era::Ray& row : matrix.rows())
    for (std::size_t nu = 0; nu < row.elements.size(); ++nu)
      width[nu] = std::max(width[nu],
                           std::to_string(row.elements[nu]).size());
  std::string out;
  for (const era::Ray& row : matrix.rows()) {
    for (std::size_t nu = 0; nu < row.elements.size(); ++nu) {
      const std::string cell = std::to_string(row.elements[nu]);
      if (nu) out += ' ';
      out.append(width[nu] - cell.size(), ' ');
      out += cell;
    }
    out += '\n';
  }
  return out;
}

std::string report_text(const era::VerificationReport& report) {
  std::string out;
  out += "sieve_bound=" + std::to_string(report.sieve_bound) +
         " count_bound=" + std::to_string(report.count_bound) + "\n";
  out += "matrix rows=" + std::to_string(report.num_rows) +
         " element_limit=" + std::to_string(report.element_limit) + "\n";
  for (const era::CheckResult& r : report.results) {
    const char* tag = r.status == era::CheckStatus::pass   ? "PASS"
                      : r.status == era::CheckStatus::fail ? "FAIL"
                                                           : "SKIP";
    out += tag;
    out += ' ' + r.check_id;
    out.append(r.check_id.size() < 20 ? 20 - r.check_id.size() : 1, ' ');
    out += "instances=" + std::to_string(r.instances_tested);
    if (!r.failures.empty())
      out += " failures=" + std::to_string(r.failures.size());
    if (r.status == era::CheckStatus::skipped && !r.skip_reason.empty())
      out += " (" + r.skip_reason + ")";
    out += '\n';
    for (const era::Counterexample& ce : r.failures) {
      out += "  counterexample:";
      for (const auto& [name, value] : ce.inputs)
        out += ' ' + name + '=' + std::to_string(value);
      out += " expected " + ce.expected + ", actual " +
             std::to_string(ce.actual) + '\n';
    }
  }
  out += "data discrepancies: " +
         std::to_string(report.data_discrepancies.size()) + '\n';
  for (const era::Discrepancy& d : report.data_discrepancies)
    out += "  mu=" + std::to_string(d.mu) + " nu=" + std::to_string(d.nu) +
           " paper=" + std::to_string(d.paper_value) +
           " computed=" + std::to_string(d.computed_value) + '\n';
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw era::Error(era::Errc::io, "cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw era::Error(era::Errc::io, "write to " + path + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  std::string cache_flag;

  CLI::App app{"Eratosthenes-ray toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--sieve-bound", cfg.sieve_bound,
                 "dense sieve bound (default 1e8)");
  app.add_option("--count-bound", cfg.count_bound,
                 "counting bound (default 1e11)");
  app.add_option("--format", cfg.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", cache_flag,
                 "sieve cache file (ERA_CACHE overrides)");

  u64 arg_x = 0, arg_n = 0;
  auto* cmd_pi = app.add_subcommand("pi", "prime count up to x");
  cmd_pi->add_option("x", arg_x, "query point")->required();
  auto* cmd_nth = app.add_subcommand("nth-prime", "the n-th prime");
  cmd_nth->add_option("n", arg_n, "1-based prime index")->required();
  auto* cmd_descend = app.add_subcommand(
      "descend", "follow pi down to the ray seed of n");
  cmd_descend->add_option("n", arg_n, "value to descend")->required();

  u64 matrix_rows = 10, matrix_limit = 0;
  auto* cmd_matrix = app.add_subcommand("matrix", "print a ray matrix corner");
  cmd_matrix->add_option("--rows", matrix_rows, "number of rows (default 10)");
  cmd_matrix->add_option("--limit", matrix_limit,
                         "element limit (default: count bound)");

  era::VerifyConfig vcfg;
  bool strict_paper = false, strict_gap = false;
  auto* cmd_verify = app.add_subcommand("verify", "machine-check the ray identities");
  cmd_verify->add_option("--limit", vcfg.partition_limit,
                         "partition check limit (default 1e6)");
  cmd_verify->add_option("--class-limit", vcfg.classification_limit,
                         "classification check limit (default 1e4)");
  cmd_verify->add_option("--rows", vcfg.num_rows, "matrix rows (default 10)");
  cmd_verify->add_option("--element-limit", vcfg.element_limit,
                         "matrix element limit (default 1e6)");
  cmd_verify->add_option("--seeds", vcfg.subset_seeds,
                         "sample seeds for the subset check (default 2 7 13)");
  cmd_verify->add_flag("--strict-paper", strict_paper,
                       "treat reference-corner mismatches as fatal");
  cmd_verify->add_flag("--strict", strict_gap,
                       "treat gap-growth failures as fatal");

  u64 spiral_rows = 4, spiral_limit = 0, canvas = 800, label_threshold = 0;
  std::string svg_path, table_path, radius_mode = "log";
  double offset = 0.0;
  auto* cmd_spiral = app.add_subcommand("spiral", "export the spiral/web figure");
  cmd_spiral->add_option("--rows", spiral_rows, "rows rendered (default 4)");
  cmd_spiral->add_option("--limit", spiral_limit,
                         "element limit (default: count bound)");
  cmd_spiral->add_option("--svg", svg_path, "write SVG here");
  cmd_spiral->add_option("--table", table_path, "write the point table here");
  cmd_spiral->add_option("--radius-mode", radius_mode, "log or column")
      ->check(CLI::IsMember({"log", "column"}));
  cmd_spiral->add_option("--offset", offset, "angular offset in radians");
  cmd_spiral->add_option("--canvas", canvas, "canvas size in pixels");
  cmd_spiral->add_option("--label-threshold", label_threshold,
                         "label values up to this (0 = no labels)");

  auto* cmd_cache = app.add_subcommand("cache", "sieve cache maintenance");
  cmd_cache->require_subcommand(1);
  std::string cache_arg_save, cache_arg_load;
  auto* cmd_cache_save = cmd_cache->add_subcommand("save", "write the sieve cache");
  cmd_cache_save->add_option("path", cache_arg_save, "cache file");
  auto* cmd_cache_load = cmd_cache->add_subcommand("load", "load and check a cache");
  cmd_cache_load->add_option("path", cache_arg_load, "cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "era: " << e.what() << "\n";
    return 2;
  }

  if (const char* env = std::getenv("ERA_CACHE"); env && *env)
    cfg.cache_path = env;
  else
    cfg.cache_path = cache_flag;

  try {
    if (*cmd_pi) {
      const auto idx = make_indexer(cfg);
      const u64 result = idx.prime_count(arg_x);
      emit(cfg, "pi", json{{"x", arg_x}}, result,
           std::to_string(result) + "\n");
    } else if (*cmd_nth) {
      const auto idx = make_indexer(cfg);
      const u64 result = idx.nth_prime(arg_n);
      emit(cfg, "nth-prime", json{{"n", arg_n}}, result,
           std::to_string(result) + "\n");
    } else if (*cmd_descend) {
      const auto idx = make_indexer(cfg);
      const era::Descent d = era::descend(idx, arg_n);
      emit(cfg, "descend", json{{"n", arg_n}},
           json{{"seed", d.seed}, {"depth", d.depth}},
           "seed=" + std::to_string(d.seed) +
               " depth=" + std::to_string(d.depth) + "\n");
    } else if (*cmd_matrix) {
      if (matrix_limit == 0) matrix_limit = cfg.count_bound;
      const auto idx = make_indexer(cfg);
      const auto matrix = era::build_matrix(idx, matrix_rows, matrix_limit);
      emit(cfg, "matrix", json{{"rows", matrix_rows}, {"limit", matrix_limit}},
           era::to_json(matrix), matrix_text(matrix));
    } else if (*cmd_verify) {
      const auto idx = make_indexer(cfg);
      const auto report = era::run_all(idx, vcfg);
      emit(cfg, "verify",
           json{{"limit", vcfg.partition_limit},
                {"class_limit", vcfg.classification_limit},
                {"rows", vcfg.num_rows},
                {"element_limit", vcfg.element_limit},
                {"strict_paper", strict_paper},
                {"strict", strict_gap}},
           era::to_json(report), report_text(report));
      if (!report.all_passed(strict_gap)) return 1;
      if (strict_paper && !report.data_discrepancies.empty()) return 1;
    } else if (*cmd_spiral) {
      if (svg_path.empty() && table_path.empty())
        throw era::Error(era::Errc::parameter,
                         "spiral: pass --svg and/or --table");
      if (spiral_limit == 0) spiral_limit = cfg.count_bound;
      const auto idx = make_indexer(cfg);
      const auto matrix = era::build_matrix(idx, spiral_rows, spiral_limit);
      era::LayoutConfig lcfg;
      lcfg.radius_mode = radius_mode == "column" ? era::RadiusMode::column_index
                                                 : era::RadiusMode::log_value;
      lcfg.rows_rendered = spiral_rows;
      lcfg.angular_offset = offset;
      lcfg.canvas_size = canvas;
      lcfg.label_threshold = label_threshold;
      const auto lay = era::layout(matrix, lcfg);
      std::string text;
      json result{{"points", lay.points.size()},
                  {"strands", lay.strands.size()},
                  {"rings", lay.rings.size()}};
      if (!svg_path.empty()) {
        const std::string svg = era::render_svg(lay, lcfg);
        write_file(svg_path, svg);
        result["svg"] = json{{"path", svg_path}, {"bytes", svg.size()}};
        text += "wrote " + svg_path + " (" + std::to_string(svg.size()) +
                " bytes)\n";
      }
      if (!table_path.empty()) {
        const std::string table = era::export_table(lay);
        write_file(table_path, table);
        result["table"] = json{{"path", table_path}, {"bytes", table.size()}};
        text += "wrote " + table_path + " (" + std::to_string(table.size()) +
                " bytes)\n";
      }
      emit(cfg, "spiral",
           json{{"rows", spiral_rows}, {"limit", spiral_limit}},
           result, text);
    } else if (*cmd_cache_save) {
      const std::string path =
          !cache_arg_save.empty() ? cache_arg_save : cfg.cache_path;
      if (path.empty())
        throw era::Error(era::Errc::parameter,
                         "cache save: no path (argument, --cache, or ERA_CACHE)");
      const auto idx = era::PrimeIndexer::build(cfg.sieve_bound, cfg.count_bound);
      era::write_sieve_cache(path, idx);
      const u64 bytes = 13 + (idx.sieve_bit_count() + 7) / 8;
      emit(cfg, "cache-save", json{{"path", path}},
           json{{"path", path}, {"bytes", bytes},
                {"sieve_bound", idx.sieve_bound()}},
           "saved " + path + " (" + std::to_string(bytes) +
               " bytes, sieve_bound=" + std::to_string(idx.sieve_bound()) +
               ")\n");
    } else if (*cmd_cache_load) {
      const std::string path =
          !cache_arg_load.empty() ? cache_arg_load : cfg.cache_path;
      if (path.empty())
        throw era::Error(era::Errc::parameter,
                         "cache load: no path (argument, --cache, or ERA_CACHE)");
      std::string why;
      auto cache = era::read_sieve_cache(path, &why);
      if (cache) {
        const auto idx = era::PrimeIndexer::from_sieve_words(
            cache->sieve_bound, std::max(cfg.count_bound, cache->sieve_bound),
            std::move(cache->words));
        emit(cfg, "cache-load", json{{"path", path}},
             json{{"status", "loaded"}, {"sieve_bound", idx.sieve_bound()},
                  {"primes", idx.sieve_prime_count()}},
             "loaded " + path +
                 " (sieve_bound=" + std::to_string(idx.sieve_bound()) +
                 ", primes=" + std::to_string(idx.sieve_prime_count()) + ")\n");
      } else {
        std::cerr << "era: cache rejected (" << why << "); building fresh\n";
        const auto idx =
            era::PrimeIndexer::build(cfg.sieve_bound, cfg.count_bound);
        emit(cfg, "cache-load", json{{"path", path}},
             json{{"status", "rejected"}, {"reason", why},
                  {"sieve_bound", idx.sieve_bound()}},
             "rebuilt fresh (sieve_bound=" + std::to_string(idx.sieve_bound()) +
                 ")\n");
      }
    }
  } catch (const era::Error& e) {
    std::cerr << "era: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "era: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
