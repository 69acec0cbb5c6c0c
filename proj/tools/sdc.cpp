// Command-line frontend: code validation, encoder synthesis, decoder table
// builds, fault audits, and the Monte-Carlo experiment harnesses.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdc/experiments.hpp"
#include "sdc/frame.hpp"
#include "sdc/synth.hpp"
#include "sdc/tableau.hpp"

using json = nlohmann::json;

namespace {

std::string out_path(const std::string& path) {
  const char* dir = std::getenv("SDC_OUT_DIR");
  if (!dir || path.empty() || path.front() == '/') return path;
  return std::string(dir) + "/" + path;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(out_path(path));
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// Plain-text key=value config; command-line flags win over file entries.
std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

sdc::Heartbeat make_heartbeat() {
  auto start = std::chrono::steady_clock::now();
  auto last = std::make_shared<std::chrono::steady_clock::time_point>(start);
  return [start, last](size_t point, size_t npoints, uint64_t done, uint64_t total) {
    auto now = std::chrono::steady_clock::now();
    if (now - *last < std::chrono::seconds(2) && done != total) return;
    *last = now;
    double elapsed = std::chrono::duration<double>(now - start).count();
    double eta = done ? elapsed * (static_cast<double>(total - done) / done) : 0;
    std::fprintf(stderr, "[hb] point %zu/%zu  shots %llu/%llu  elapsed %.1fs  eta %.1fs\n",
                 point + 1, npoints, static_cast<unsigned long long>(done),
                 static_cast<unsigned long long>(total), elapsed, eta);
  };
}

int cmd_code_validate(const std::string& source, size_t wmax) {
  sdc::StabilizerCode code;
  if (source == "builtin") {
    code = sdc::builtin_code();
  } else {
    code = sdc::bundle_parse(read_file(source));
  }
  std::printf("n = %zu, k = %zu\n", code.n, code.k);
  std::printf("rank(sx) = %zu, rank(sz) = %zu\n", sdc::gf2::rank(code.sx), sdc::gf2::rank(code.sz));
  if (auto err = sdc::validate_code(code)) {
    std::printf("INVALID: %s\n", err->c_str());
    return 1;
  }
  std::printf("orthogonality and logical pairing OK\n");
  sdc::DistanceResult d = sdc::code_distance(code, wmax);
  if (d.exact)
    std::printf("distance = %zu (witness weight %zu)\n", d.distance, d.witness.weight());
  else
    std::printf("distance >= %zu (no logical up to weight %zu)\n", wmax + 1, wmax);
  if (source == "builtin") {
    // Verify the published logical supports verbatim.
    const auto& supports = sdc::builtin_logical_supports();
    for (size_t i = 0; i < 6; ++i) {
      sdc::gf2::BitVector row = code.lx.row(i);
      for (int q : supports[i])
        if (!row.get(q - 1)) {
          std::printf("INVALID: logical X%zu support mismatch\n", i + 1);
          return 1;
        }
    }
    if (d.exact && d.distance == 5) std::printf("[[30,6,5]] OK\n");
  }
  return 0;
}

int cmd_synth(const std::string& kind, bool raw, const std::string& out, bool do_audit) {
  const sdc::StabilizerCode& code = sdc::builtin_code();
  sdc::EncoderProtocol proto;
  sdc::Circuit circuit(0);
  bool have_proto = false;

  if (kind == "plus") {
    circuit = sdc::synth_plus_encoder(code);
    if (!raw) circuit = sdc::overlap_optimize(code, circuit);
  } else if (kind == "arbitrary") {
    circuit = sdc::synth_arbitrary_encoder(code);
  } else if (kind == "zero") {
    proto = sdc::synth_zero_encoder(code, false);
    have_proto = true;
  } else if (kind == "ft-plus") {
    proto = sdc::synth_ft_plus_encoder(code);
    have_proto = true;
  } else if (kind == "ft-zero") {
    proto = sdc::synth_zero_encoder(code, true);
    have_proto = true;
  } else if (kind == "naive9" || kind == "naive6" || kind == "naive4") {
    auto v = kind == "naive9" ? sdc::NaiveVariant::Copies9
           : kind == "naive6" ? sdc::NaiveVariant::Copies6 : sdc::NaiveVariant::Copies4;
    proto = sdc::synth_naive_encoder(code, v);
    have_proto = true;
  } else {
    std::fprintf(stderr, "unknown synth kind: %s\n", kind.c_str());
    return 2;
  }

  const sdc::Circuit& c = have_proto ? proto.circuit : circuit;
  std::printf("qubits: %u\n", c.num_qubits);
  std::printf("cnot count: %zu\n", c.cnot_count());
  std::printf("ancilla count: %zu\n", have_proto ? proto.plan.ancilla_count : 0);
  if (!out.empty()) write_file(out, c.to_text());

  if (do_audit && have_proto && !proto.checks.empty()) {
    bool plus_output = kind != "ft-zero" && kind != "zero";
    sdc::FtAuditResult audit = sdc::audit_protocol_ft(proto, code, plus_output);
    std::printf("fault locations: %zu (accepted %zu, rejected %zu)\n", audit.locations,
                audit.accepted, audit.rejected);
    if (audit.violations.empty()) {
      std::printf("FT: single-fault clean\n");
    } else {
      std::printf("FT: %zu violations\n", audit.violations.size());
      return 1;
    }
  } else if (do_audit && !have_proto && kind == "plus") {
    sdc::FaultAuditReport rep = sdc::audit_single_faults(circuit, code, sdc::PauliBasis::Z);
    std::printf("fault locations: %zu, harmful Z residuals: %zu (verification required)\n",
                rep.total_locations, rep.harmful.size());
  }
  return 0;
}

int cmd_decoder_build(const std::string& basis, uint32_t wmax, const std::string& out) {
  const sdc::StabilizerCode& code = sdc::builtin_code();
  sdc::PauliBasis b = basis == "x" ? sdc::PauliBasis::X : sdc::PauliBasis::Z;
  sdc::LookupTable table =
      sdc::build_lookup(b == sdc::PauliBasis::X ? code.sx : code.sz, b, wmax);
  table.save(out_path(out));
  std::printf("table: basis %s, w_max %u, %s at w_max, %zu entries\n", basis.c_str(), wmax,
              table.filled_at_w_max() ? "complete" : "completed one weight higher",
              sdc::LookupTable::kSyndromes);
  return 0;
}

int cmd_audit(const std::string& circuit_file, const std::string& protocol,
              const std::string& basis) {
  const sdc::StabilizerCode& code = sdc::builtin_code();
  if (!protocol.empty()) {
    sdc::EncoderProtocol proto;
    bool plus_output = true;
    if (protocol == "ft-plus") proto = sdc::synth_ft_plus_encoder(code);
    else if (protocol == "ft-zero") { proto = sdc::synth_zero_encoder(code, true); plus_output = false; }
    else if (protocol == "naive9") proto = sdc::synth_naive_encoder(code, sdc::NaiveVariant::Copies9);
    else if (protocol == "naive6") proto = sdc::synth_naive_encoder(code, sdc::NaiveVariant::Copies6);
    else if (protocol == "naive4") proto = sdc::synth_naive_encoder(code, sdc::NaiveVariant::Copies4);
    else {
      std::fprintf(stderr, "unknown protocol: %s\n", protocol.c_str());
      return 2;
    }
    sdc::FtAuditResult audit = sdc::audit_protocol_ft(proto, code, plus_output);
    std::printf("locations: %zu, accepted: %zu, rejected: %zu, violations: %zu\n",
                audit.locations, audit.accepted, audit.rejected, audit.violations.size());
    return audit.violations.empty() ? 0 : 1;
  }
  sdc::Circuit c = sdc::Circuit::from_text(read_file(circuit_file));
  auto run_basis = [&](sdc::PauliBasis b, const char* name) {
    sdc::FaultAuditReport rep = sdc::audit_single_faults(c, code, b);
    std::printf("%s audit: %zu locations, %zu harmful residuals\n", name, rep.total_locations,
                rep.harmful.size());
  };
  if (basis == "z" || basis == "both") run_basis(sdc::PauliBasis::Z, "Z");
  if (basis == "x" || basis == "both") run_basis(sdc::PauliBasis::X, "X");
  return 0;
}

json fit_json(const sdc::PowerLawFit& fit) {
  return {{"exponent", fit.exponent},
          {"prefactor", fit.prefactor},
          {"exponent_se", fit.exponent_se},
          {"points_used", fit.points_used}};
}

json points_json(const std::vector<sdc::SweepPoint>& pts) {
  json arr = json::array();
  for (const auto& pt : pts) {
    sdc::WilsonInterval ci = sdc::wilson_interval(pt.failures, pt.shots);
    arr.push_back({{"p", pt.p},
                   {"shots", pt.shots},
                   {"failures", pt.failures},
                   {"rate", pt.rate},
                   {"ci_lo", ci.lo},
                   {"ci_hi", ci.hi},
                   {"attempts", pt.attempts}});
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"[[30,6,5]] symplectic double code toolkit"};
  app.require_subcommand(1);

  // code validate
  auto* code_cmd = app.add_subcommand("code", "code inspection");
  code_cmd->require_subcommand(1);
  auto* validate = code_cmd->add_subcommand("validate", "check a code bundle");
  std::string code_source = "builtin";
  size_t wmax_validate = 5;
  validate->add_option("--code", code_source, "bundle file or 'builtin'");
  validate->add_option("--wmax", wmax_validate, "distance search cutoff");

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize an encoder");
  std::string synth_kind, synth_out;
  bool synth_raw = false, synth_no_audit = false;
  synth->add_option("kind", synth_kind,
                    "plus|zero|arbitrary|ft-plus|ft-zero|naive9|naive6|naive4")
      ->required();
  synth->add_flag("--raw", synth_raw, "direct 108-CNOT form (plus only)");
  synth->add_option("--out", synth_out, "circuit text output file");
  synth->add_flag("--no-audit", synth_no_audit, "skip the single-fault audit");

  // decoder build
  auto* dec_cmd = app.add_subcommand("decoder", "lookup tables");
  dec_cmd->require_subcommand(1);
  auto* dec_build = dec_cmd->add_subcommand("build", "build and save a table");
  std::string dec_basis = "x", dec_out = "lookup.bin";
  uint32_t dec_wmax = 4;
  dec_build->add_option("--basis", dec_basis, "x or z")->check(CLI::IsMember({"x", "z"}));
  dec_build->add_option("--wmax", dec_wmax, "enumeration weight cap");
  dec_build->add_option("--out", dec_out, "output file")->required();

  // audit
  auto* audit = app.add_subcommand("audit", "single-fault audit");
  std::string audit_file, audit_protocol, audit_basis = "z";
  audit->add_option("circuit", audit_file, "circuit text file");
  audit->add_option("--protocol", audit_protocol,
                    "audit a shipped protocol with its acceptance rule");
  audit->add_option("--basis", audit_basis, "z|x|both")
      ->check(CLI::IsMember({"z", "x", "both"}));

  // exp
  auto* exp = app.add_subcommand("exp", "Monte-Carlo experiments");
  exp->require_subcommand(1);
  std::string cfg_path, exp_encoder = "proposed", exp_csv, exp_json_path, exp_plist;
  uint64_t exp_shots = 0, exp_seed = 0;
  bool seed_set = false;
  int workers = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cfg_path, "key=value config file");
    sub->add_option("--shots", exp_shots, "shots (or blocks) per sweep point");
    sub->add_option("--seed", exp_seed, "master seed")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--csv", exp_csv, "CSV output path");
    sub->add_option("--json", exp_json_path, "JSON summary output path");
    sub->add_option("--workers", workers, "worker thread count (default: cores)");
  };
  auto* exp_dec = exp->add_subcommand("decoder", "phase-flip decoding sweep");
  exp_dec->add_option("--pflip", exp_plist, "comma-separated p_flip list");
  add_common(exp_dec);
  auto* exp_cnot = exp->add_subcommand("cnot", "logical CNOT benchmark");
  exp_cnot->add_option("--pcirc", exp_plist, "comma-separated p_circ list");
  exp_cnot->add_option("--encoder", exp_encoder, "proposed|9copy|6copy|4copy");
  add_common(exp_cnot);
  auto* exp_over = exp->add_subcommand("overhead", "qubit overhead estimate");
  exp_over->add_option("--pcirc", exp_plist, "p_circ (single value)");
  exp_over->add_option("--encoder", exp_encoder, "proposed|9copy|6copy|4copy|all");
  add_common(exp_over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_code_validate(code_source, wmax_validate);
    if (synth->parsed()) return cmd_synth(synth_kind, synth_raw, synth_out, !synth_no_audit);
    if (dec_build->parsed()) return cmd_decoder_build(dec_basis, dec_wmax, dec_out);
    if (audit->parsed()) {
      if (audit_file.empty() && audit_protocol.empty()) {
        std::fprintf(stderr, "audit: give a circuit file or --protocol\n");
        return 2;
      }
      return cmd_audit(audit_file, audit_protocol, audit_basis);
    }

    // Experiments: apply config file (flags win), then validate.
    auto cfg = load_config(cfg_path);
    auto cfg_default = [&](const std::string& key, std::string& target) {
      if (target.empty() && cfg.count(key)) target = cfg[key];
    };
    cfg_default("pflip", exp_plist);
    cfg_default("pcirc", exp_plist);
    cfg_default("csv", exp_csv);
    cfg_default("json", exp_json_path);
    cfg_default("encoder", exp_encoder);
    if (!exp_shots && cfg.count("shots")) exp_shots = std::stoull(cfg["shots"]);
    if (!seed_set && cfg.count("seed")) {
      exp_seed = std::stoull(cfg["seed"]);
      seed_set = true;
    }
    if (!workers && cfg.count("workers")) workers = std::stoi(cfg["workers"]);

    if (workers > 0) omp_set_num_threads(workers);
    if (!seed_set) {
      std::fprintf(stderr, "experiments require an explicit --seed\n");
      return 2;
    }
    if (exp_plist.empty()) {
      std::fprintf(stderr, "no sweep points given\n");
      return 2;
    }
    std::vector<double> ps = parse_list(exp_plist);
    json summary;
    std::vector<sdc::SweepPoint> points;

    if (exp_dec->parsed()) {
      if (!exp_shots) exp_shots = 1000000;
      auto res = sdc::run_decoder_benchmark(ps, exp_shots, exp_seed, make_heartbeat());
      points = res.points;
      summary = {{"experiment", "decoder"}, {"fit", fit_json(res.fit)}};
    } else if (exp_cnot->parsed()) {
      if (!exp_shots) exp_shots = 100000;
      auto variant = sdc::encoder_variant_from_string(exp_encoder);
      auto res = sdc::run_logical_cnot_benchmark(ps, exp_shots, variant, exp_seed,
                                                 make_heartbeat());
      points = res.points;
      summary = {{"experiment", "cnot"},
                 {"encoder", sdc::to_string(variant)},
                 {"fit", fit_json(res.fit)}};
    } else if (exp_over->parsed()) {
      if (!exp_shots) exp_shots = 2000;
      if (ps.size() != 1) {
        std::fprintf(stderr, "overhead takes a single p_circ\n");
        return 2;
      }
      std::vector<std::string> variants;
      if (exp_encoder == "all") variants = {"proposed", "4copy", "6copy", "9copy"};
      else variants = {exp_encoder};
      json arr = json::array();
      for (const std::string& v : variants) {
        auto res = sdc::estimate_qubit_overhead(sdc::encoder_variant_from_string(v), ps[0],
                                                exp_shots, exp_seed);
        std::printf("%-9s p=%g  expected qubits per accepted block: %.1f  (attempts %llu / blocks %llu)\n",
                    v.c_str(), ps[0], res.expected_qubits,
                    static_cast<unsigned long long>(res.attempts),
                    static_cast<unsigned long long>(res.blocks));
        arr.push_back({{"encoder", v},
                       {"p_circ", res.p_circ},
                       {"blocks", res.blocks},
                       {"attempts", res.attempts},
                       {"expected_qubits", res.expected_qubits}});
      }
      summary = {{"experiment", "overhead"}, {"results", arr}};
    }

    if (!points.empty()) {
      std::string csv = sdc::sweep_to_csv(points);
      if (!exp_csv.empty()) write_file(exp_csv, csv);
      else std::fputs(csv.c_str(), stdout);
      summary["points"] = points_json(points);
      if (summary.contains("fit") && summary["fit"]["points_used"].get<size_t>() >= 2)
        std::printf("fit: exponent %.3f +/- %.3f (prefactor %.4g)\n",
                    summary["fit"]["exponent"].get<double>(),
                    summary["fit"]["exponent_se"].get<double>(),
                    summary["fit"]["prefactor"].get<double>());
    }
    summary["seed"] = exp_seed;
    summary["shots"] = exp_shots;
    if (!exp_json_path.empty()) write_file(exp_json_path, summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
