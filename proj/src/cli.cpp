// Copyright 2026 The jacobi-codebooks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jcb/cli.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "jcb/codebook.hpp"
#include "jcb/codebook_io.hpp"
#include "jcb/errors.hpp"
#include "json.hpp"

namespace jcb::cli {
namespace {

using nlohmann::ordered_json;

std::string join(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

// Validates p/m/ext and builds the tower; UsageError on bad input.
Tower build_tower(const RunConfig& cfg) {
  if (!is_prime(cfg.p)) throw UsageError("p must be prime");
  if (cfg.m == 0) throw UsageError("m must be positive");
  if (cfg.ext_degrees.empty()) throw UsageError("--ext needs at least one degree");
  return Tower::build(cfg.p, cfg.m, cfg.ext_degrees);
}

FieldElement resolve_a(const Tower& tower, std::uint64_t a_log) {
  return tower.base().exp(a_log % tower.base().group_order());
}

// Writes to cfg.out_path when given, else to out. Returns false if the file
// cannot be opened or written.
template <class Fn>
bool emit(const RunConfig& cfg, std::ostream& out, std::ostream& err, Fn&& write) {
  if (cfg.out_path.empty()) {
    write(out);
    return true;
  }
  std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << cfg.out_path << " for writing\n";
    return false;
  }
  write(file);
  file.flush();
  if (!file) {
    err << "error: failed writing " << cfg.out_path << "\n";
    return false;
  }
  return true;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

ordered_json sum_json(const SumCheck& c) {
  return {{"re", c.value.real()},         {"im", c.value.imag()},
          {"abs", std::abs(c.value)},     {"predicted", c.predicted},
          {"case", to_string(c.label)},   {"judged", c.judged},
          {"deviation", c.deviation},     {"pass", c.pass}};
}

std::string sum_text(const char* name, const SumCheck& c) {
  std::string s = fmt::format("{} |J|={:.6f}", name, std::abs(c.value));
  if (!c.judged) return s + " (no theorem)";
  return s + fmt::format(" pred={:.6f} [{}] {}", c.predicted, to_string(c.label),
                         c.pass ? "ok" : "FAIL");
}

}  // namespace

TableRow table_row(std::uint64_t q, const std::vector<std::uint32_t>& ext_degrees, Variant variant,
                   std::uint64_t a_log, std::uint64_t budget) {
  TableRow row;
  row.q = q;
  const auto pm = prime_power(q);
  if (!pm) {
    row.error = std::to_string(q) + " is not a prime power";
    return row;
  }
  try {
    const auto [n, k] = codebook_shape(static_cast<std::uint32_t>(q), ext_degrees, variant);
    row.n = n;
    row.k = k;
    if (imax_scan_cost(n, k) <= budget) {
      const Tower tower = Tower::build(pm->first, pm->second, ext_degrees);
      const Codebook cb = build_codebook(tower, variant, resolve_a(tower, a_log));
      row.imax = compute_imax(cb).imax;
      row.measured = true;
    } else if (!(variant == Variant::kHat && q < 4)) {
      row.imax = predicted_imax(static_cast<std::uint32_t>(q), ext_degrees, variant);
    }
    row.welch = welch_bound(n, k);
    if (row.imax && *row.imax > 0) row.ratio = row.welch / *row.imax;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.q_list.empty()) throw UsageError("--q-list is empty");
    if (cfg.ext_degrees.empty()) throw UsageError("--ext needs at least one degree");
    std::vector<TableRow> rows;
    bool any_error = false;
    for (const auto q : cfg.q_list) {
      rows.push_back(table_row(q, cfg.ext_degrees, cfg.variant, cfg.a_log, cfg.budget));
      any_error |= rows.back().error.has_value();
    }
    auto opt6 = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string("n/a"); };
    const bool ok = emit(cfg, out, err, [&](std::ostream& os) {
      switch (cfg.format) {
        case OutputFormat::kText:
          os << fmt::format("# variant={} ext=({})\n", to_string(cfg.variant), join(cfg.ext_degrees));
          os << fmt::format("{:>5} {:>9} {:>7} {:>10} {:>10} {:>10}  {}\n", "q", "N", "K", "I_max",
                            "I_W", "I_W/I_max", "source");
          for (const auto& r : rows) {
            if (r.error) {
              os << fmt::format("{:>5}  error: {}\n", r.q, *r.error);
              continue;
            }
            os << fmt::format("{:>5} {:>9} {:>7} {:>10} {:>10} {:>10}  {}\n", r.q, r.n, r.k,
                              opt6(r.imax), fixed6(r.welch), opt6(r.ratio),
                              r.measured ? "measured" : "predicted");
          }
          break;
        case OutputFormat::kCsv:
          os << "q,N,K,I_max,I_W,I_W/I_max,source\n";
          for (const auto& r : rows) {
            if (r.error) {
              os << fmt::format("{},,,,,,error: {}\n", r.q, *r.error);
              continue;
            }
            os << fmt::format("{},{},{},{},{},{},{}\n", r.q, r.n, r.k, opt6(r.imax),
                              fixed6(r.welch), opt6(r.ratio),
                              r.measured ? "measured" : "predicted");
          }
          break;
        case OutputFormat::kJson: {
          auto arr = ordered_json::array();
          for (const auto& r : rows) {
            ordered_json j{{"q", r.q}};
            if (r.error) {
              j["error"] = *r.error;
            } else {
              j["N"] = r.n;
              j["K"] = r.k;
              j["I_max"] = r.imax ? ordered_json(*r.imax) : ordered_json();
              j["I_W"] = r.welch;
              j["ratio"] = r.ratio ? ordered_json(*r.ratio) : ordered_json();
              j["source"] = r.measured ? "measured" : "predicted";
            }
            arr.push_back(std::move(j));
          }
          os << arr.dump(2) << '\n';
          break;
        }
      }
    });
    if (!ok) return kExitFailure;
    return any_error ? kExitFailure : kExitOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tower tower = build_tower(cfg);
    const FieldElement a = resolve_a(tower, cfg.a_log);
    const std::uint32_t a_log = tower.base().log(a);
    const VerifyResult vr = verify_all(tower, a, {cfg.tolerance, cfg.budget});

    const auto [n, k] = codebook_shape(tower.q(), tower.ext_degrees(), cfg.variant);
    if (imax_scan_cost(n, k) > cfg.budget) {
      throw CapacityError(fmt::format("I_max scan of a ({}, {}) codebook exceeds the budget", n, k));
    }
    const Codebook cb = build_codebook(tower, cfg.variant, a);
    const CoherenceResult coh = compute_imax(cb);
    std::optional<double> predicted;
    if (!(cfg.variant == Variant::kHat && tower.q() < 4)) {
      predicted = predicted_imax(tower.q(), tower.ext_degrees(), cfg.variant);
    }
    const bool imax_ok = !predicted || std::abs(coh.imax - *predicted) <= cfg.tolerance;
    const CodebookReport rep = classify({n, k, tower.q(), tower.ext_degrees(), cfg.variant,
                                         coh.imax, predicted});

    const bool ok = emit(cfg, out, err, [&](std::ostream& os) {
      if (cfg.format == OutputFormat::kJson) {
        ordered_json doc{{"p", tower.p()}, {"m", tower.m()},        {"q", tower.q()},
                         {"ext_degrees", tower.ext_degrees()},      {"a", a_log},
                         {"tolerance", cfg.tolerance}};
        auto tuples = ordered_json::array();
        for (const auto& r : vr.reports) {
          ordered_json j{{"t", r.exponents}};
          j["hat"] = r.hat ? sum_json(*r.hat) : ordered_json();
          j["tilde"] = sum_json(r.tilde);
          j["relation_deviation"] =
              r.relation_deviation ? ordered_json(*r.relation_deviation) : ordered_json();
          j["pass"] = r.pass;
          tuples.push_back(std::move(j));
        }
        doc["tuples"] = std::move(tuples);
        doc["passed"] = vr.passed;
        doc["total"] = vr.reports.size();
        doc["codebook"] = {
            {"variant", to_string(cfg.variant)},
            {"N", n},
            {"K", k},
            {"measured_imax", coh.imax},
            {"argmax", {coh.i, coh.j}},
            {"predicted_imax", predicted ? ordered_json(*predicted) : ordered_json()},
            {"welch", rep.welch},
            {"levenshtein", rep.levenshtein ? ordered_json(*rep.levenshtein) : ordered_json()},
            {"ratio_welch", rep.ratio_welch},
            {"classification", to_string(rep.classification)},
            {"pass", imax_ok}};
        os << doc.dump(2) << '\n';
        return;
      }
      os << fmt::format("tower p={} m={} q={} ext=({}) a=g^{}\n", tower.p(), tower.m(), tower.q(),
                        join(tower.ext_degrees()), a_log);
      for (const auto& r : vr.reports) {
        std::string line = "t=(" + join(r.exponents) + ")";
        if (r.hat) line += "  " + sum_text("hat", *r.hat);
        line += "  " + sum_text("tilde", r.tilde);
        if (r.relation_deviation) {
          line += fmt::format("  relation {}", r.relation_pass ? "ok" : "FAIL");
        }
        os << line << '\n';
      }
      std::string summary = fmt::format("{}/{} character tuples pass; I_max measured {}",
                                        vr.passed, vr.reports.size(), fixed6(coh.imax));
      if (predicted) {
        summary += fmt::format(" {} predicted {}", imax_ok ? "=" : "!=", fixed6(*predicted));
      } else {
        summary += " (no closed form for the hat construction with q < 4)";
      }
      os << summary << '\n';
      os << fmt::format("codebook {} (N={}, K={}): I_W={} I_W/I_max={} {}\n",
                        to_string(cfg.variant), n, k, fixed6(rep.welch), fixed6(rep.ratio_welch),
                        to_string(rep.classification));
    });
    if (!ok) return kExitFailure;
    return vr.all_pass() && imax_ok ? kExitOk : kExitFailure;
  });
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.format == OutputFormat::kText) throw UsageError("gen writes json or csv");
    const Tower tower = build_tower(cfg);
    const auto [n, k] = codebook_shape(tower.q(), tower.ext_degrees(), cfg.variant);
    if (n * k > cfg.budget) {
      throw CapacityError(fmt::format("codebook with {} x {} entries exceeds the budget", n, k));
    }
    const Codebook cb = build_codebook(tower, cfg.variant, resolve_a(tower, cfg.a_log),
                                      std::min(cfg.budget, kDefaultMaxCodebookEntries));
    for (const auto& w : cb.warnings) err << "warning: " << w << "\n";
    const bool ok = emit(cfg, out, err, [&](std::ostream& os) {
      if (cfg.format == OutputFormat::kJson) {
        write_codebook_json(cb, os);
      } else {
        write_codebook_csv(cb, os);
      }
    });
    return ok ? kExitOk : kExitFailure;
  });
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t n = cfg.bound_n, k = cfg.bound_k;
    if (n == 0 || k == 0) throw UsageError("N and K must be positive");
    out << fmt::format("N = {}, K = {}\n", n, k);
    if (n < k) {
      out << "I_W = not applicable (N < K)\n";
    } else if (n < 2) {
      out << "I_W = not applicable (N < 2)\n";
    } else {
      out << "I_W = " << fixed6(welch_bound(n, k)) << '\n';
    }
    const auto lc = levenshtein_bound(n, k, false);
    out << "I_L complex = " << (lc ? fixed6(*lc) : std::string("not applicable (N <= K^2)")) << '\n';
    const auto lr = levenshtein_bound(n, k, true);
    out << "I_L real = " << (lr ? fixed6(*lr) : std::string("not applicable (N <= K(K+1)/2)"))
        << '\n';
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string variant = "hat";
  std::string format;

  CLI::App app{"Nearly optimal codebooks from generalized Jacobi sums", "jcodebook"};
  app.require_subcommand(1);
  const std::map<std::string, Variant> variants{{"hat", Variant::kHat},
                                                {"tilde", Variant::kTilde}};
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", variant, "Defining set: hat or tilde")
        ->check(CLI::IsMember({"hat", "tilde"}));
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Characteristic")->required();
    sub->add_option("--m", cfg.m, "Base field degree, q = p^m");
    sub->add_option("--ext", cfg.ext_degrees, "Extension degrees m_1,...,m_k")
        ->delimiter(',')
        ->required();
    sub->add_option("--a", cfg.a_log, "a = generator^A in F_q (default 1)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out_path, "Output path (default: stdout)");
    sub->add_option("--budget", cfg.budget, "Work budget in complex multiply-adds");
  };

  auto* table = app.add_subcommand("table", "Reproduce the codebook parameter table");
  add_variant(table);
  table->get_option("--variant")->required();
  table->add_option("--q-list", cfg.q_list, "Field sizes q1,q2,...")->delimiter(',')->required();
  table->add_option("--ext", cfg.ext_degrees, "Extension degrees m_1,...,m_k")->delimiter(',');
  table->add_option("--a", cfg.a_log, "a = generator^A in F_q (default 1)");
  add_common(table);

  auto* verify = app.add_subcommand("verify", "Check every character-sum theorem and I_max");
  add_field(verify);
  add_variant(verify);
  add_common(verify);
  verify->add_option("--tol", cfg.tolerance, "Absolute tolerance");

  auto* gen = app.add_subcommand("gen", "Export a codebook");
  add_field(gen);
  add_variant(gen);
  add_common(gen);

  auto* bounds = app.add_subcommand("bounds", "Welch and Levenshtein bounds for (N, K)");
  bounds->add_option("N", cfg.bound_n, "Number of codewords")->required();
  bounds->add_option("K", cfg.bound_k, "Codeword length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.variant = variants.at(variant);
  if (format == "json") cfg.format = OutputFormat::kJson;
  if (format == "csv") cfg.format = OutputFormat::kCsv;
  if (format.empty() && gen->parsed()) cfg.format = OutputFormat::kJson;

  if (table->parsed()) {
    if (cfg.ext_degrees.empty()) cfg.ext_degrees = {1, 2};
    cfg.subcommand = "table";
    return cmd_table(cfg, out, err);
  }
  if (verify->parsed()) {
    cfg.subcommand = "verify";
    return cmd_verify(cfg, out, err);
  }
  if (gen->parsed()) {
    cfg.subcommand = "gen";
    return cmd_gen(cfg, out, err);
  }
  cfg.subcommand = "bounds";
  return cmd_bounds(cfg, out, err);
}

}  // namespace jcb::cli
