// Command-line frontend: certified norm evaluation, membership
// classification, the property-suite verifier, and divergence demos.
//
// Results go to stdout (or --output), diagnostics to stderr.  Exit codes:
//   0  success / all checks passed
//   1  a verification or demonstration failed
//   2  usage error (bad flags, unreadable or malformed input)
//   3  the requested quantity diverges where a finite value was required

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "granda/amalgam.hpp"
#include "granda/stepfn.hpp"
#include "granda/grandnorm.hpp"
#include "granda/io.hpp"
#include "granda/smallnorm.hpp"
#include "granda/verifier.hpp"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDivergent = 3;

// JSON has no inf; records spell it out the same way the verifier does.
ojson num_or_name(double v) {
  if (std::isinf(v)) return ojson(v > 0 ? "inf" : "-inf");
  return ojson(v);
}

ojson bracket_json(const granda::NormBracket& b) {
  return ojson::array({num_or_name(b.lower), num_or_name(b.upper)});
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Accumulates the result text; everything is written in one piece so a
// partial failure never leaves a half-written output file.
struct Sink {
  std::string path;  // empty = stdout
  std::ostringstream buf;

  void line(const std::string& s) { buf << s << "\n"; }
  void flush() {
    if (path.empty()) {
      std::fputs(buf.str().c_str(), stdout);
    } else {
      granda::write_file(path, buf.str());
    }
  }
};

nlohmann::json load_input(const std::string& path) {
  return nlohmann::json::parse(granda::read_file(path));
}

void print_norm_human(Sink& out, const std::string& what,
                      const granda::GrandNormResult& r) {
  out.line(what);
  if (r.divergent) {
    out.line("  divergent (certified lower " + fmt(r.bracket.lower) + ")");
  } else {
    out.line("  bracket: [" + fmt(r.bracket.lower) + ", " +
             fmt(r.bracket.upper) + "]");
    out.line("  width: " + fmt(r.bracket.width()));
    out.line("  arg eps: " + fmt(r.arg_best));
  }
  out.line("  evaluations: " + std::to_string(r.evaluations));
}

ojson norm_record(const std::string& command,
                  const granda::GrandNormResult& r) {
  ojson j;
  j["command"] = command;
  j["bracket"] = bracket_json(r.bracket);
  j["divergent"] = r.divergent;
  j["arg_eps"] = r.arg_best;
  j["evaluations"] = r.evaluations;
  return j;
}

int run_norm_seq(const std::string& input, double q, double theta, double eps0,
                 bool truncated, const std::string& format, Sink& out) {
  granda::GrandSequence x = granda::sequence_from_json(load_input(input));
  granda::GrandParams prm{q, theta};
  granda::GrandNormResult r =
      truncated ? granda::grand_norm_truncated(x, prm, eps0)
                : granda::grand_norm(x, prm);
  if (format == "records") {
    ojson j = norm_record(truncated ? "norm-seq-truncated" : "norm-seq", r);
    j["q"] = q;
    j["theta"] = theta;
    if (truncated) j["eps0"] = eps0;
    out.line(granda::record_line(j));
  } else {
    print_norm_human(out, truncated ? "grand sequence norm (eps <= " +
                                          fmt(eps0) + ")"
                                    : "grand sequence norm",
                     r);
  }
  return r.divergent ? kExitDivergent : kExitPass;
}

int run_norm_amalgam(const std::string& input, double p, double q, double theta,
                     double eps0, bool truncated, const std::string& format,
                     Sink& out) {
  granda::StepFunction g = granda::step_from_json(load_input(input));
  granda::AmalgamParams prm{p, q, theta};
  granda::GrandNormResult r;
  if (truncated) {
    granda::GrandSequence locals = granda::local_lp(g, p);
    r = granda::grand_norm_truncated(locals, granda::GrandParams{q, theta},
                                     eps0);
  } else {
    r = granda::amalgam_grand_norm(g, prm);
  }
  if (format == "records") {
    ojson j = norm_record(truncated ? "norm-amalgam-truncated" : "norm-amalgam",
                          r);
    j["p"] = p;
    j["q"] = q;
    j["theta"] = theta;
    if (truncated) j["eps0"] = eps0;
    out.line(granda::record_line(j));
  } else {
    print_norm_human(out, "grand amalgam norm (local exponent " + fmt(p) + ")",
                     r);
  }
  return r.divergent ? kExitDivergent : kExitPass;
}

int run_norm_small(const std::string& input, double p, double q, double theta,
                   int budget, std::uint64_t seed, const std::string& format,
                   Sink& out) {
  nlohmann::json j = load_input(input);
  granda::GrandParams prm{q, theta};
  granda::SmallNormEstimate est;
  bool is_step = j.contains("pieces");
  if (is_step) {
    est = granda::amalgam_small_norm(granda::step_from_json(j),
                                     granda::AmalgamParams{p, q, theta}, budget,
                                     {}, seed);
  } else {
    est = granda::small_norm_upper(granda::sequence_from_json(j), prm, budget,
                                   {}, seed);
  }
  if (format == "records") {
    ojson r;
    r["command"] = "norm-small";
    r["q"] = q;
    r["theta"] = theta;
    if (is_step) r["p"] = p;
    r["upper"] = num_or_name(est.upper);
    r["lower"] = num_or_name(est.lower);
    r["witness_parts"] =
        static_cast<std::int64_t>(est.witness_decomposition.parts.size());
    r["evaluations"] = est.evaluations;
    out.line(granda::record_line(r));
  } else {
    out.line(is_step ? "small amalgam norm" : "small sequence norm");
    out.line("  upper: " + fmt(est.upper));
    out.line("  lower: " + fmt(est.lower));
    out.line("  gap: " + fmt(est.upper - est.lower));
    out.line("  witness parts: " +
             std::to_string(est.witness_decomposition.parts.size()));
    out.line("  evaluations: " + std::to_string(est.evaluations));
  }
  return kExitPass;
}

int run_membership(double q, double theta, double a, bool log_free,
                   double threshold, const std::string& format, Sink& out) {
  granda::MembershipVerdict v = granda::powerlog_membership(
      granda::GrandParams{q, theta}, a, log_free, threshold);
  if (format == "records") {
    ojson j;
    j["command"] = "membership";
    j["q"] = q;
    j["theta"] = theta;
    j["a"] = log_free ? ojson(nullptr) : ojson(a);
    j["member"] = v.member;
    j["evidence"] = bracket_json(v.evidence);
    j["evidence_consistent"] = v.evidence_consistent;
    j["reason"] = v.reason;
    out.line(granda::record_line(j));
  } else {
    out.line(std::string("member: ") + (v.member ? "yes" : "no"));
    out.line("reason: " + v.reason);
    if (!v.ladder.empty()) {
      out.line("certified ladder (eps, value):");
      for (const auto& [e, val] : v.ladder)
        out.line("  " + fmt(e) + "  " + fmt(val));
    }
    out.line("evidence: [" + fmt(v.evidence.lower) + ", " +
             fmt(v.evidence.upper) + "]");
    out.line(std::string("evidence consistent: ") +
             (v.evidence_consistent ? "yes" : "no"));
  }
  return v.evidence_consistent ? kExitPass : kExitFail;
}

int run_verify(const std::vector<std::string>& which, std::uint64_t seed,
               int cases, double tolerance, int budget, bool list_only,
               const std::string& format, Sink& out) {
  std::vector<std::string> names = granda::suite_names();
  if (list_only) {
    for (const std::string& n : names) out.line(n);
    return kExitPass;
  }
  if (!which.empty()) {
    for (const std::string& w : which) {
      bool known = false;
      for (const std::string& n : names) known = known || n == w;
      if (!known) throw CLI::ValidationError("verify", "unknown suite: " + w);
    }
    names = which;
  }

  granda::SuiteConfig cfg;
  cfg.seed = seed;
  cfg.cases = cases;
  cfg.tolerance = tolerance;
  cfg.budget = budget;

  std::string problem;
  if (!granda::coverage_complete(&problem)) {
    std::fprintf(stderr, "coverage registry inconsistent: %s\n",
                 problem.c_str());
    return kExitFail;
  }

  int total_failed = 0, total_inconclusive = 0, total_cases = 0;
  for (const std::string& name : names) {
    granda::VerificationReport rep = granda::run_suite(name, cfg);
    total_failed += rep.failed;
    total_inconclusive += rep.inconclusive;
    total_cases += rep.cases;
    if (format == "records") {
      out.buf << rep.to_records();
    } else {
      out.line(rep.summary_line());
      for (const granda::CaseRecord& r : rep.records)
        if (r.status == granda::CheckStatus::Fail)
          out.line("  FAIL case " + std::to_string(r.index) + " [" + r.digest +
                   "] " + r.note);
    }
    std::fprintf(stderr, "%s: %d/%d passed\n", name.c_str(), rep.passed,
                 rep.cases);
  }
  if (format != "records") {
    std::ostringstream os;
    os << "total: " << total_cases << " cases, " << total_failed
       << " failed, " << total_inconclusive << " inconclusive";
    out.line(os.str());
  }
  return total_failed == 0 ? kExitPass : kExitFail;
}

int run_demo(const std::string& family, double threshold,
             const std::string& format, Sink& out) {
  // Defaults chosen so each family's expected behavior is visible: the
  // divergent families should cross, the control should stay under.
  double thr = threshold;
  if (thr <= 0.0)
    thr = family == "old-grand-norm-critical" ? 3.0 : 25.0;
  granda::DivergenceReport rep = granda::divergence_demo(family, thr);
  bool control = family.find("control") != std::string::npos;
  bool as_expected = control ? !rep.crossed : (rep.crossed && rep.monotone);
  if (format == "records") {
    for (const granda::DemoRow& r : rep.rows) {
      ojson j;
      j["family"] = rep.family;
      j["x"] = r.x;
      j["value"] = r.value;
      out.line(granda::record_line(j));
    }
    ojson s;
    s["family"] = rep.family;
    s["threshold"] = rep.threshold;
    s["crossed"] = rep.crossed;
    s["monotone"] = rep.monotone;
    s["growth_fit"] = rep.growth_fit;
    s["as_expected"] = as_expected;
    out.line(granda::record_line(s));
  } else {
    out.line("family: " + rep.family);
    out.line("threshold: " + fmt(rep.threshold));
    out.line("        x                value");
    for (const granda::DemoRow& r : rep.rows) {
      std::ostringstream os;
      os << "  " << std::setw(12) << std::setprecision(6) << r.x << "  "
         << std::setprecision(12) << r.value;
      out.line(os.str());
    }
    out.line(std::string("crossed: ") + (rep.crossed ? "yes" : "no") +
             "  monotone: " + (rep.monotone ? "yes" : "no") +
             "  growth fit: " + fmt(rep.growth_fit));
    out.line("note: " + rep.note);
    out.line(std::string("as expected: ") + (as_expected ? "yes" : "no"));
  }
  return as_expected ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certified grand/small amalgam norms: evaluation, membership, "
      "verification, divergence demos"};
  app.require_subcommand(1);

  std::string input, output, format = "human";
  double q = 1.0, theta = 1.0, p = 1.0, eps0 = 1.0, a = 0.0;
  double tolerance = 1e-9, mem_threshold = 2.0, demo_threshold = 0.0;
  int budget = 24, cases = 100;
  std::uint64_t seed = 42;
  bool log_free = false, list_only = false;
  std::vector<std::string> suites;
  std::string family = "critical-power-indicator";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "write results to this file");
    cmd->add_option("--format", format, "human or records")
        ->check(CLI::IsMember({"human", "records"}));
  };

  CLI::App* cseq = app.add_subcommand("norm-seq", "grand sequence norm");
  cseq->add_option("--input", input, "sequence JSON file")->required();
  cseq->add_option("--q", q, "base exponent q >= 1");
  cseq->add_option("--theta", theta, "scaling exponent theta > 0");
  CLI::Option* seq_eps0 =
      cseq->add_option("--eps0", eps0, "restrict to 0 < eps <= eps0");
  add_common(cseq);

  CLI::App* cam = app.add_subcommand("norm-amalgam", "grand amalgam norm");
  cam->add_option("--input", input, "step-function JSON file")->required();
  cam->add_option("--p", p, "local exponent p >= 1");
  cam->add_option("--q", q, "base exponent q >= 1");
  cam->add_option("--theta", theta, "scaling exponent theta > 0");
  CLI::Option* am_eps0 =
      cam->add_option("--eps0", eps0, "restrict to 0 < eps <= eps0");
  add_common(cam);

  CLI::App* csm = app.add_subcommand(
      "norm-small", "small norm (decomposition search upper + dual lower)");
  csm->add_option("--input", input, "sequence or step-function JSON file")
      ->required();
  csm->add_option("--p", p, "local exponent (step-function input)");
  csm->add_option("--q", q, "base exponent q >= 1");
  csm->add_option("--theta", theta, "scaling exponent theta > 0");
  csm->add_option("--budget", budget, "decomposition search budget");
  csm->add_option("--seed", seed, "search RNG seed");
  add_common(csm);

  CLI::App* cmem = app.add_subcommand(
      "membership", "classify x_n = n^(-1/q) ln(n+1)^(-a) against the window");
  cmem->add_option("--q", q, "base exponent q >= 1");
  cmem->add_option("--theta", theta, "scaling exponent theta > 0");
  cmem->add_option("--a", a, "logarithmic decay exponent");
  cmem->add_flag("--log-free", log_free, "use the plain power x_n = n^(-1/q)");
  cmem->add_option("--threshold", mem_threshold,
                   "growth threshold for below-window evidence");
  add_common(cmem);

  CLI::App* cver = app.add_subcommand("verify", "run property suites");
  cver->add_option("suites", suites, "suite names (default: all)");
  cver->add_flag("--list", list_only, "list suite names and exit");
  cver->add_option("--seed", seed, "base RNG seed");
  cver->add_option("--cases", cases, "cases per suite");
  cver->add_option("--tolerance", tolerance, "comparison slack");
  cver->add_option("--budget", budget, "decomposition search budget");
  add_common(cver);

  CLI::App* cdemo =
      app.add_subcommand("demo", "divergence evidence ladders");
  cdemo->add_option("family", family, "one of the known families");
  cdemo->add_option("--threshold", demo_threshold,
                    "crossing threshold (0 = family default)");
  add_common(cdemo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Sink out;
  out.path = output;
  int rc = kExitUsage;
  try {
    if (cseq->parsed()) {
      rc = run_norm_seq(input, q, theta, eps0, seq_eps0->count() > 0, format,
                        out);
    } else if (cam->parsed()) {
      rc = run_norm_amalgam(input, p, q, theta, eps0, am_eps0->count() > 0,
                            format, out);
    } else if (csm->parsed()) {
      rc = run_norm_small(input, p, q, theta, budget, seed, format, out);
    } else if (cmem->parsed()) {
      rc = run_membership(q, theta, a, log_free, mem_threshold, format, out);
    } else if (cver->parsed()) {
      rc = run_verify(suites, seed, cases, tolerance, budget, list_only,
                      format, out);
    } else if (cdemo->parsed()) {
      rc = run_demo(family, demo_threshold, format, out);
    }
    out.flush();
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return rc;
}
