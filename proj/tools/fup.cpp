/* Command-line front end: exact pair predicates, norm tables, exhaustive
 * classification, two-element Z_{M^2} families, gap-count validation and
 * the witness bound, with JSON/CSV/text reports. */

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fup/classify.hpp"
#include "fup/errors.hpp"
#include "fup/norms.hpp"
#include "fup/omega.hpp"
#include "fup/pairs.hpp"
#include "fup/version.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerification = 4;

struct Config {
  long long m = 0;
  std::string a_spec;
  std::string b_spec;
  int kmax = 4;
  int k = 1;
  long long b1p = 0;
  long long b2p = 0;
  std::string sizes_spec;
  std::string format = "text";
  std::string out;
  int threads = 0;  // 0: resolve from FUP_THREADS or the hardware
  long long dense_limit = 4096;
  double tol = 1e-10;
  bool force = false;
  bool emit_config = false;
  long long q = 0;
  long long l = 0;
  long long omega_k = 0;
  long long qmax = 4;
  long long lmax = 4;
  long long grid_kmax = 20;
};

int default_threads() {
  if (const char* env = std::getenv("FUP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/* Comma list of integers, or @path with one integer per line. */
std::vector<long long> parse_digits(const std::string& spec, const std::string& name) {
  std::vector<long long> digits;
  std::string body = spec;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw CLI::ValidationError(name, "cannot open digit file " + spec.substr(1));
    std::ostringstream collected;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) collected << line << ',';
    }
    body = collected.str();
  }
  std::stringstream stream(body);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    try {
      size_t used = 0;
      const long long value = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      digits.push_back(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError(name, "not an integer: '" + token + "'");
    }
  }
  if (digits.empty()) throw CLI::ValidationError(name, "no digits given");
  return digits;
}

std::vector<int> parse_sizes(const std::string& spec) {
  std::vector<int> sizes;
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    sizes.push_back(std::stoi(token));
  }
  return sizes;
}

void notice_unusual_digits(const std::vector<long long>& digits, long long m, const std::string& name) {
  for (long long d : digits)
    if (d < 0 || d >= m) {
      std::cerr << "notice: " << name << " has digits outside [0, " << m
                << "); predicates treat them exactly, norms index by digit tuple\n";
      return;
    }
}

std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json witness_json(const fup::PairWitness& w) {
  json out{{"b1", w.b1}, {"b1p", w.b1p}};
  if (w.b2) {
    out["b2"] = w.b2->first;
    out["b2p"] = w.b2->second;
  }
  return out;
}

json verdict_json(const fup::PairVerdict& v) {
  json out{{"spectral_in_M", v.spectral_in_m},
           {"spectral_in_M2", v.spectral_in_m2},
           {"distributed_spectral", v.distributed_spectral},
           {"two_scale_condition", v.two_scale_condition}};
  json witnesses = json::object();
  if (v.spectral_in_m_witness) witnesses["spectral_in_M"] = witness_json(*v.spectral_in_m_witness);
  if (v.spectral_in_m2_witness) witnesses["spectral_in_M2"] = witness_json(*v.spectral_in_m2_witness);
  if (v.distributed_spectral_witness)
    witnesses["distributed_spectral"] = witness_json(*v.distributed_spectral_witness);
  if (v.two_scale_condition_witness) witnesses["two_scale_condition"] = witness_json(*v.two_scale_condition_witness);
  out["witnesses"] = witnesses;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

std::string join_digits(const std::vector<long long>& digits, char sep = ':') {
  std::string out;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(digits[i]);
  }
  return out;
}

/* The emitted report carries the config snapshot, the results payload and
 * the wall-clock timing. JSON key order is alphabetical (nlohmann), so a
 * parse/re-serialize round trip is byte-stable. */
struct ReportWriter {
  json report;
  std::string format;
  std::string out_path;
  std::string csv_text;
  std::string plain_text;

  int emit() const {
    std::string body;
    if (format == "json")
      body = report.dump(2) + "\n";
    else if (format == "csv")
      body = csv_text;
    else
      body = plain_text;
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
      }
      out << body;
    }
    return kExitOk;
  }
};

json config_json(const Config& c, const std::string& command) {
  json out{{"command", command},
           {"format", c.format},
           {"threads", c.threads},
           {"dense_limit", c.dense_limit},
           {"tol", c.tol}};
  if (c.m) out["M"] = c.m;
  if (!c.a_spec.empty()) out["A"] = parse_digits(c.a_spec, "--A");
  if (!c.b_spec.empty()) out["B"] = parse_digits(c.b_spec, "--B");
  if (command == "norm") out["kmax"] = c.kmax;
  if (command == "witness") {
    out["k"] = c.k;
    out["b1p"] = c.b1p;
    out["b2p"] = c.b2p;
  }
  if (command == "classify") {
    if (!c.sizes_spec.empty()) out["sizes"] = parse_sizes(c.sizes_spec);
    out["force"] = c.force;
  }
  if (command == "omega") {
    if (c.q) {
      out["q"] = c.q;
      out["L"] = c.l;
      out["k"] = c.omega_k;
    } else {
      out["qmax"] = c.qmax;
      out["lmax"] = c.lmax;
      out["kmax"] = c.grid_kmax;
    }
  }
  if (!c.out.empty()) out["out"] = c.out;
  return out;
}

ReportWriter make_writer(const Config& c, const std::string& command, json results,
                         double seconds, std::string csv_text, std::string plain_text) {
  ReportWriter writer;
  writer.report = json{{"command", command},
                       {"version", fup::kVersion},
                       {"config", config_json(c, command)},
                       {"results", std::move(results)},
                       {"timings", json{{"total_seconds", seconds}}}};
  writer.format = c.format;
  writer.out_path = c.out;
  writer.csv_text = std::move(csv_text);
  writer.plain_text = std::move(plain_text);
  return writer;
}

fup::NormOptions norm_options(const Config& c) {
  fup::NormOptions opt;
  opt.dense_limit = c.dense_limit;
  opt.tol = c.tol;
  opt.threads = c.threads;
  return opt;
}

/* ---- subcommand bodies ------------------------------------------------ */

int run_check(const Config& c) {
  const auto a = parse_digits(c.a_spec, "--A");
  const auto b = parse_digits(c.b_spec, "--B");
  notice_unusual_digits(a, c.m, "A");
  notice_unusual_digits(b, c.m, "B");
  const auto t0 = std::chrono::steady_clock::now();
  const fup::PairVerdict verdict = fup::evaluate_pair(a, b, c.m);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string csv = "predicate,value\n";
  csv += "spectral_in_M," + std::string(verdict.spectral_in_m ? "true" : "false") + "\n";
  csv += "spectral_in_M2," + std::string(verdict.spectral_in_m2 ? "true" : "false") + "\n";
  csv += "distributed_spectral," + std::string(verdict.distributed_spectral ? "true" : "false") + "\n";
  csv += "two_scale_condition," + std::string(verdict.two_scale_condition ? "true" : "false") + "\n";

  std::ostringstream text;
  text << "pair check: M = " << c.m << ", A = {" << join_digits(a, ',') << "}, B = {"
       << join_digits(b, ',') << "}\n"
       << "  spectral in Z_M:        " << (verdict.spectral_in_m ? "yes" : "no") << "\n"
       << "  spectral in Z_{M^2}:    " << (verdict.spectral_in_m2 ? "yes" : "no") << "\n"
       << "  distributed spectral:   " << (verdict.distributed_spectral ? "yes" : "no") << "\n"
       << "  two-scale condition:    " << (verdict.two_scale_condition ? "yes" : "no") << "\n";
  if (verdict.distributed_spectral_witness) {
    const auto& w = *verdict.distributed_spectral_witness;
    text << "  violating tuple: b1 = " << w.b1 << ", b1' = " << w.b1p;
    if (w.b2) text << ", b2 = " << w.b2->first << ", b2' = " << w.b2->second;
    text << "\n";
  }
  if (!verdict.note.empty()) text << "  note: " << verdict.note << "\n";

  return make_writer(c, "check", verdict_json(verdict), dt, csv, text.str()).emit();
}

int run_norm(const Config& c) {
  const auto a = parse_digits(c.a_spec, "--A");
  const auto b = parse_digits(c.b_spec, "--B");
  const auto t0 = std::chrono::steady_clock::now();
  const fup::NormSequence seq =
      fup::beta_sequence(fup::Alphabet(c.m, a), fup::Alphabet(c.m, b), c.kmax, norm_options(c));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json rows = json::array();
  for (const auto& row : seq.rows) {
    json r{{"k", row.k}, {"norm", row.norm}};
    if (row.rescaled) r["rescaled"] = *row.rescaled;
    if (row.beta) r["beta"] = *row.beta;
    rows.push_back(r);
  }
  json results{{"rows", rows}, {"delta_A", seq.delta_a}, {"delta_B", seq.delta_b}};
  if (seq.most_uncertain) results["most_uncertain"] = *seq.most_uncertain;
  if (seq.error) results["error"] = *seq.error;

  std::string csv = "k,norm,rescaled,beta,most_uncertain\n";
  for (const auto& row : seq.rows) {
    csv += std::to_string(row.k) + "," + csv_double(row.norm) + ",";
    csv += (row.rescaled ? csv_double(*row.rescaled) : "") + std::string(",");
    csv += (row.beta ? csv_double(*row.beta) : "") + std::string(",");
    csv += (seq.most_uncertain ? csv_double(*seq.most_uncertain) : "") + std::string("\n");
  }

  std::ostringstream text;
  text << "submatrix norms: M = " << c.m << ", A = {" << join_digits(a, ',') << "}, B = {"
       << join_digits(b, ',') << "}\n";
  if (seq.most_uncertain)
    text << "  most uncertain exponent (1-delta)/2 = " << *seq.most_uncertain << "\n";
  text << "  k      norm           rescaled       beta\n";
  for (const auto& row : seq.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-6d %-14.10f %-14.10f %-14.10f\n", row.k, row.norm,
                  row.rescaled.value_or(std::nan("")), row.beta.value_or(std::nan("")));
    text << line;
  }
  if (seq.error) text << "  stopped early: " << *seq.error << "\n";

  const int code = make_writer(c, "norm", results, dt, csv, text.str()).emit();
  if (code != kExitOk) return code;
  return seq.error ? kExitInfeasible : kExitOk;
}

int run_classify(const Config& c) {
  std::vector<int> sizes = parse_sizes(c.sizes_spec);
  if (sizes.empty())
    for (int s = 2; s < c.m; ++s) sizes.push_back(s);
  fup::SearchOptions opt;
  opt.threads = c.threads;
  opt.force = c.force;
  if (c.force)
    std::cerr << "warning: feasibility guard overridden; the search may take very long\n";

  const auto t0 = std::chrono::steady_clock::now();
  const fup::ClassificationReport report = fup::search_dsp(c.m, sizes, opt);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json pairs = json::array();
  long long count_zm = 0, count_zm2 = 0, count_other = 0;
  for (const auto& p : report.pairs) {
    pairs.push_back(json{{"A", p.a},
                         {"B", p.b},
                         {"tag", fup::to_string(p.tag)},
                         {"self_dual", p.self_dual},
                         {"conjecture_consistent", p.conjecture_consistent}});
    if (p.tag == fup::PairTag::spectral_in_zm) ++count_zm;
    else if (p.tag == fup::PairTag::spectral_in_zm2_only) ++count_zm2;
    else ++count_other;
  }
  json results{{"modulus", report.modulus},
               {"sizes", report.sizes},
               {"pairs", pairs},
               {"summary", json{{"spectral-in-Z_M", count_zm},
                                {"spectral-in-Z_M2-only", count_zm2},
                                {"other-DSP", count_other}}},
               {"stats", json{{"candidate_a_sets", report.stats.candidate_a_sets},
                              {"pruned_a_sets", report.stats.pruned_a_sets},
                              {"pairs_tested", report.stats.pairs_tested},
                              {"ordered_dsp_pairs", report.stats.dsp_pairs_found}}}};

  std::string csv = "A,B,tag,self_dual,conjecture_consistent\n";
  for (const auto& p : report.pairs) {
    csv += join_digits(p.a) + "," + join_digits(p.b) + "," + fup::to_string(p.tag) + ",";
    csv += std::string(p.self_dual ? "true" : "false") + "," +
           (p.conjecture_consistent ? "true" : "false") + "\n";
  }

  std::ostringstream text;
  text << "distributed spectral pairs in Z_" << c.m << " (canonical, deduplicated)\n";
  for (const auto& p : report.pairs)
    text << "  A = {" << join_digits(p.a, ',') << "}  B = {" << join_digits(p.b, ',') << "}  "
         << fup::to_string(p.tag) << (p.self_dual ? "  [self-dual]" : "") << "\n";
  text << "summary: " << count_zm << " spectral-in-Z_M, " << count_zm2
       << " spectral-in-Z_M2-only, " << count_other << " other-DSP\n";

  return make_writer(c, "classify", results, dt, csv, text.str()).emit();
}

int run_m2pairs(const Config& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const fup::M2PairFamily family = fup::spectral_pairs_in_M2(c.m);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json pairs = json::array();
  for (const auto& p : family.pairs)
    pairs.push_back(json{{"a", p.a}, {"b", p.b}, {"provenance", p.provenance}});
  json results{{"modulus", family.modulus}, {"pairs", pairs}};
  if (!family.note.empty()) results["note"] = family.note;

  std::string csv = "a,b,provenance\n";
  for (const auto& p : family.pairs)
    csv += std::to_string(p.a) + "," + std::to_string(p.b) + "," + p.provenance + "\n";

  std::ostringstream text;
  text << "two-element spectral pairs ({0,a},{0,b}) in Z_{" << c.m << "^2}\n";
  for (const auto& p : family.pairs)
    text << "  a = " << p.a << ", b = " << p.b << "  [" << p.provenance << "]\n";
  if (family.pairs.empty())
    text << "  none" << (family.note.empty() ? "" : ": " + family.note) << "\n";

  return make_writer(c, "m2pairs", results, dt, csv, text.str()).emit();
}

int run_omega(const Config& c) {
  const auto t0 = std::chrono::steady_clock::now();
  json results;
  std::string csv = "q,L,k,enumeration,formula,match\n";
  std::ostringstream text;

  if (c.q) {
    const fup::OmegaSpec spec{c.q, c.omega_k, c.l};
    const long long enumerated = fup::enumerate_omega(spec);
    const fup::BigInt formula = fup::omega_formula(spec);
    const bool match = fup::BigInt(enumerated) == formula;
    results = json{{"q", c.q},
                   {"L", c.l},
                   {"k", c.omega_k},
                   {"enumeration", enumerated},
                   {"formula", formula.str()},
                   {"match", match}};
    csv += std::to_string(c.q) + "," + std::to_string(c.l) + "," + std::to_string(c.omega_k) + "," +
           std::to_string(enumerated) + "," + formula.str() + "," + (match ? "true" : "false") + "\n";
    text << "gap-constrained tuples: q=" << c.q << " k=" << c.omega_k << " L=" << c.l
         << ": enumeration = " << enumerated << ", formula = " << formula.str() << "\n";
  } else {
    long long points = 0, matches = 0;
    json mismatches = json::array();
    for (long long q = 1; q <= c.qmax; ++q)
      for (long long l = 1; l <= c.lmax; ++l)
        for (long long k = 1; k <= c.grid_kmax; ++k) {
          const fup::OmegaSpec spec{q, k, l};
          const long long enumerated = fup::enumerate_omega(spec);
          const fup::BigInt formula = fup::omega_formula(spec);
          const bool match = fup::BigInt(enumerated) == formula;
          ++points;
          if (match)
            ++matches;
          else
            mismatches.push_back(json{{"q", q}, {"L", l}, {"k", k}});
          csv += std::to_string(q) + "," + std::to_string(l) + "," + std::to_string(k) + "," +
                 std::to_string(enumerated) + "," + formula.str() + "," +
                 (match ? "true" : "false") + "\n";
        }
    // The superseded factorial expression, documented to disagree at (2,10,3).
    const fup::OmegaSpec outlier{2, 10, 3};
    const long long outlier_count = fup::enumerate_omega(outlier);
    const auto variant = fup::factorial_quotient_formula(outlier);
    json superseded{{"q", 2},
                    {"k", 10},
                    {"L", 3},
                    {"enumeration", outlier_count},
                    {"factorial_quotient", variant ? variant->str() : "undefined"},
                    {"agrees", variant.has_value() && *variant == fup::BigInt(outlier_count)}};
    results = json{{"grid", json{{"qmax", c.qmax},
                                 {"lmax", c.lmax},
                                 {"kmax", c.grid_kmax},
                                 {"points", points},
                                 {"matches", matches},
                                 {"mismatches", mismatches}}},
                   {"superseded_check", superseded}};
    text << matches << "/" << points << " grid points: enumeration = formula\n"
         << "superseded factorial expression at (q=2, k=10, L=3): "
         << superseded["factorial_quotient"].get<std::string>() << " vs enumeration "
         << outlier_count << "\n";
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return make_writer(c, "omega", results, dt, csv, text.str()).emit();
}

int run_witness(const Config& c) {
  const auto a = parse_digits(c.a_spec, "--A");
  const auto b = parse_digits(c.b_spec, "--B");
  const fup::Alphabet alpha_a(c.m, a), alpha_b(c.m, b);
  const auto t0 = std::chrono::steady_clock::now();
  const double bound =
      fup::witness_lower_bound(alpha_a, alpha_b, c.k, c.b1p, c.b2p, norm_options(c));
  const double norm = fup::submatrix_norm(alpha_a, alpha_b, 2 * c.k, norm_options(c));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool sound = bound <= norm * norm + 1e-9;
  json results{{"k", c.k},
               {"b1p", c.b1p},
               {"b2p", c.b2p},
               {"bound", bound},
               {"norm_2k", norm},
               {"norm_2k_squared", norm * norm},
               {"sound", sound}};

  std::string csv = "k,b1p,b2p,bound,norm_2k_squared,sound\n";
  csv += std::to_string(c.k) + "," + std::to_string(c.b1p) + "," + std::to_string(c.b2p) + "," +
         csv_double(bound) + "," + csv_double(norm * norm) + "," + (sound ? "true" : "false") + "\n";

  std::ostringstream text;
  text << "witness lower bound at 2k = " << 2 * c.k << " digits, (b1', b2') = (" << c.b1p << ", "
       << c.b2p << ")\n"
       << "  bound    = " << csv_double(bound) << "\n"
       << "  norm^2   = " << csv_double(norm * norm) << "\n"
       << "  bound <= norm^2: " << (sound ? "confirmed" : "VIOLATED") << "\n";

  const int code = make_writer(c, "witness", results, dt, csv, text.str()).emit();
  if (code != kExitOk) return code;
  if (!sound) throw fup::verification_error("witness bound exceeds the squared norm");
  return kExitOk;
}

/* ---- option wiring ----------------------------------------------------- */

struct OptionRefs {
  CLI::Option* m = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* b = nullptr;
  CLI::Option* kmax = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* b1p = nullptr;
  CLI::Option* b2p = nullptr;
  CLI::Option* sizes = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* dense_limit = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* q = nullptr;
  CLI::Option* l = nullptr;
  CLI::Option* omega_k = nullptr;
};

void add_common_options(CLI::App* cmd, Config& c, OptionRefs& refs) {
  refs.format = cmd->add_option("--format", c.format, "Output format: json, csv or text")
                    ->check(CLI::IsMember({"json", "csv", "text"}));
  refs.out = cmd->add_option("--out", c.out, "Write the report to this path instead of stdout");
  refs.threads = cmd->add_option("--threads", c.threads, "Worker thread count");
  refs.dense_limit = cmd->add_option("--dense-limit", c.dense_limit,
                                     "Dimensions below this use the dense eigensolve");
  refs.tol = cmd->add_option("--tol", c.tol, "Relative convergence tolerance");
  cmd->add_flag("--emit-config", c.emit_config, "Print the effective config as JSON and exit");
  cmd->add_option("--config", "JSON config file (flags take precedence)");
}

/* Config file overlay: any option the user did not pass on the command
 * line takes its value from the JSON file when present. */
void overlay_config_file(const json& file, Config& c, const OptionRefs& refs) {
  const auto use = [&](const CLI::Option* opt, const char* key, auto& slot) {
    using T = std::decay_t<decltype(slot)>;
    if (opt && opt->count() == 0 && file.contains(key)) slot = file.at(key).get<T>();
  };
  use(refs.m, "M", c.m);
  const auto use_digits = [&](const CLI::Option* opt, const char* key, std::string& slot) {
    if (!opt || opt->count() != 0 || !file.contains(key)) return;
    if (file.at(key).is_array()) {
      std::string joined;
      for (const auto& v : file.at(key)) joined += v.dump() + ",";
      slot = joined;
    } else {
      slot = file.at(key).get<std::string>();
    }
  };
  use_digits(refs.a, "A", c.a_spec);
  use_digits(refs.b, "B", c.b_spec);
  use(refs.kmax, "kmax", c.kmax);
  use(refs.k, "k", c.k);
  use(refs.b1p, "b1p", c.b1p);
  use(refs.b2p, "b2p", c.b2p);
  if (refs.sizes && refs.sizes->count() == 0 && file.contains("sizes")) {
    std::string joined;
    for (const auto& v : file.at("sizes")) joined += v.dump() + ",";
    c.sizes_spec = joined;
  }
  use(refs.format, "format", c.format);
  use(refs.out, "out", c.out);
  use(refs.threads, "threads", c.threads);
  use(refs.dense_limit, "dense_limit", c.dense_limit);
  use(refs.tol, "tol", c.tol);
  use(refs.q, "q", c.q);
  use(refs.l, "L", c.l);
  use(refs.omega_k, "k", c.omega_k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fup: uncertainty exponents of discrete Cantor sets in cyclic groups"};
  app.set_version_flag("--version", fup::kVersion);
  app.require_subcommand(1);

  Config c;

  OptionRefs check_refs, norm_refs, classify_refs, m2_refs, omega_refs, witness_refs;

  CLI::App* cmd_check = app.add_subcommand("check", "Exact predicates on one pair (A, B)");
  check_refs.m = cmd_check->add_option("--M", c.m, "Modulus");
  check_refs.a = cmd_check->add_option("--A", c.a_spec, "Digits of A: comma list or @file");
  check_refs.b = cmd_check->add_option("--B", c.b_spec, "Digits of B: comma list or @file");
  add_common_options(cmd_check, c, check_refs);

  CLI::App* cmd_norm = app.add_subcommand("norm", "Submatrix norms, rescaled norms and beta_k");
  norm_refs.m = cmd_norm->add_option("--M", c.m, "Modulus");
  norm_refs.a = cmd_norm->add_option("--A", c.a_spec, "Digits of A");
  norm_refs.b = cmd_norm->add_option("--B", c.b_spec, "Digits of B");
  norm_refs.kmax = cmd_norm->add_option("--kmax", c.kmax, "Largest iteration order");
  add_common_options(cmd_norm, c, norm_refs);

  CLI::App* cmd_classify = app.add_subcommand("classify", "Exhaustive DSP search in Z_M");
  classify_refs.m = cmd_classify->add_option("--M", c.m, "Modulus");
  classify_refs.sizes = cmd_classify->add_option("--sizes", c.sizes_spec,
                                                 "Comma list of |A| = |B| sizes (default: all)");
  cmd_classify->add_flag("--force", c.force, "Override the feasibility guard");
  add_common_options(cmd_classify, c, classify_refs);

  CLI::App* cmd_m2 = app.add_subcommand("m2pairs", "Two-element spectral pairs in Z_{M^2}");
  m2_refs.m = cmd_m2->add_option("--M", c.m, "Modulus");
  add_common_options(cmd_m2, c, m2_refs);

  CLI::App* cmd_omega = app.add_subcommand("omega", "Gap-constrained tuple counts vs closed form");
  omega_refs.q = cmd_omega->add_option("--q", c.q, "Number of indices (single-point mode)");
  omega_refs.l = cmd_omega->add_option("--L", c.l, "Gap parameter (single-point mode)");
  omega_refs.omega_k = cmd_omega->add_option("--k", c.omega_k, "Range bound (single-point mode)");
  cmd_omega->add_option("--qmax", c.qmax, "Grid bound for q");
  cmd_omega->add_option("--lmax", c.lmax, "Grid bound for L");
  cmd_omega->add_option("--kmax", c.grid_kmax, "Grid bound for k");
  add_common_options(cmd_omega, c, omega_refs);

  CLI::App* cmd_witness = app.add_subcommand("witness", "Exponential witness lower bound vs norm^2");
  witness_refs.m = cmd_witness->add_option("--M", c.m, "Modulus");
  witness_refs.a = cmd_witness->add_option("--A", c.a_spec, "Digits of A");
  witness_refs.b = cmd_witness->add_option("--B", c.b_spec, "Digits of B");
  witness_refs.k = cmd_witness->add_option("--k", c.k, "Half order: the bound addresses 2k");
  witness_refs.b1p = cmd_witness->add_option("--b1p", c.b1p, "First witness digit of B");
  witness_refs.b2p = cmd_witness->add_option("--b2p", c.b2p, "Second witness digit of B");
  add_common_options(cmd_witness, c, witness_refs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  const OptionRefs& refs = active == cmd_check      ? check_refs
                           : active == cmd_norm     ? norm_refs
                           : active == cmd_classify ? classify_refs
                           : active == cmd_m2       ? m2_refs
                           : active == cmd_omega    ? omega_refs
                                                    : witness_refs;

  json file_config = json::object();
  try {
    if (const CLI::Option* cfg = active->get_option_no_throw("--config"); cfg && cfg->count()) {
      const std::string path = cfg->results().front();
      std::ifstream in(path);
      if (!in) {
        std::cerr << "error: cannot open config file " << path << "\n";
        return kExitUsage;
      }
      in >> file_config;
      overlay_config_file(file_config, c, refs);
    }
  } catch (const json::exception& e) {
    std::cerr << "error: bad config file: " << e.what() << "\n";
    return kExitUsage;
  }

  /* Required options, checked after the config-file overlay so either
   * source may supply them. */
  {
    const auto has = [&](const CLI::Option* opt, const char* key) {
      return (opt && opt->count() > 0) || file_config.contains(key);
    };
    std::vector<std::string> missing;
    if (active != cmd_omega && !has(refs.m, "M")) missing.push_back("--M");
    if (active == cmd_check || active == cmd_norm || active == cmd_witness) {
      if (!has(refs.a, "A")) missing.push_back("--A");
      if (!has(refs.b, "B")) missing.push_back("--B");
    }
    if (active == cmd_witness) {
      if (!has(refs.k, "k")) missing.push_back("--k");
      if (!has(refs.b1p, "b1p")) missing.push_back("--b1p");
      if (!has(refs.b2p, "b2p")) missing.push_back("--b2p");
    }
    if (!missing.empty()) {
      std::cerr << "usage error: missing required option(s):";
      for (const auto& m : missing) std::cerr << " " << m;
      std::cerr << "\n";
      return kExitUsage;
    }
  }

  if (c.threads <= 0) c.threads = default_threads();

  if (c.emit_config) {
    json effective = config_json(c, active->get_name());
    std::string argv_echo;
    for (int i = 1; i < argc; ++i) {
      if (i > 1) argv_echo += ' ';
      argv_echo += argv[i];
    }
    effective["argv"] = argv_echo;
    std::cout << effective.dump(2) << "\n";
    return kExitOk;
  }

  try {
    if (active == cmd_check) return run_check(c);
    if (active == cmd_norm) return run_norm(c);
    if (active == cmd_classify) return run_classify(c);
    if (active == cmd_m2) return run_m2pairs(c);
    if (active == cmd_omega) return run_omega(c);
    return run_witness(c);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fup::feasibility_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const fup::convergence_error& e) {
    std::cerr << "no convergence: " << e.what() << " (last Rayleigh quotients " << e.rayleigh_prev
              << ", " << e.rayleigh_last << ")\n";
    return kExitInfeasible;
  } catch (const fup::verification_error& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return kExitVerification;
  }
}
