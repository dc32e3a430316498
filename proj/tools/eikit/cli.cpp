#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <future>
#include <regex>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "eikit/derived.hpp"
#include "eikit/errors.hpp"
#include "eikit/json_output.hpp"
#include "eikit/quadrature.hpp"
#include "eikit/series_core.hpp"
#include "eikit/verify.hpp"

namespace eikit::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

// Usage problems detected after CLI11 has parsed the flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format to_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::text;
}

double require_real(const std::string& flag, const std::string& text) {
  const auto v = parse_real(text);
  if (!v) {
    throw UsageError(flag + ": expected a finite decimal number, got '" + text + "'");
  }
  return *v;
}

struct Tolerances {
  SeriesPolicy policy;
  QuadConfig quad;
};

Tolerances tolerances_from(const std::optional<std::string>& tol) {
  Tolerances t;
  if (tol) {
    const double v = require_real("--tol", *tol);
    if (!(v > 0.0)) throw UsageError("--tol must be positive");
    t.policy.abs_tol = v;
    t.quad.abs_tol = v;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation

struct Row {
  double x;
  double value;
  double error_bound;
  std::string method;
  std::int64_t work;
  bool cancellation_warning = false;
};

EvalResult require_converged(const QuadResult& q, const char* what) {
  if (!q.converged) throw NonConvergence(std::string(what) + ": quadrature did not converge");
  return EvalResult{q.value, q.error_estimate, Method::CpvQuadrature, q.evaluations};
}

// Ei(x) = Ei(1) + int_1^x e^t/t dt, the second term by integration by parts.
EvalResult ei_by_parts(double x, const SeriesPolicy& policy) {
  const EvalResult one = ei_one(policy);
  EvalResult r = lemma1_series(x, policy);
  r.value += one.value;
  r.error_bound += one.error_bound + kUnitRoundoff * std::fabs(r.value);
  r.work += one.work;
  return r;
}

Row evaluate(const std::string& function, double x, const std::string& method,
             const Tolerances& tol) {
  const std::string route = method == "auto" ? "series" : method;
  EvalResult r;
  if (function == "ei") {
    if (route == "series") r = ei_series(x, tol.policy);
    else if (route == "quadrature") r = ei_quadrature(x, tol.quad);
    else r = ei_by_parts(x, tol.policy);
  } else if (function == "li") {
    if (route == "series") {
      r = li(x, tol.policy);
    } else if (route == "quadrature") {
      r = li_quadrature(x, tol.quad);
    } else {
      if (!(x > 0.0) || x == 1.0) throw DomainError("li: need x > 0 and x != 1");
      r = ei_by_parts(std::log(x), tol.policy);
      r.error_bound += kUnitRoundoff * x;
    }
  } else {
    if (route == "series") r = goodwin_staton_rhs(x, tol.policy);
    else if (route == "quadrature") r = require_converged(goodwin_staton_lhs(x, tol.quad), "goodwin_staton");
    else throw UsageError("--method lemma1 applies only to ei and li");
  }
  return Row{x, r.value, r.error_bound, std::string(method_name(r.method)), r.work, r.cancellation_warning};
}

void print_rows(std::ostream& out, Format format, const std::string& command, const Json& inputs,
                const std::string& function, const std::vector<Row>& rows) {
  switch (format) {
    case Format::json: {
      Json doc;
      doc["command"] = command;
      doc["inputs"] = inputs;
      doc["results"] = Json::array();
      for (const auto& r : rows) {
        Json j;
        j["function"] = function;
        j["x"] = r.x;
        j["value"] = r.value;
        j["error_bound"] = r.error_bound;
        j["method"] = r.method;
        j["work"] = r.work;
        j["cancellation_warning"] = r.cancellation_warning;
        doc["results"].push_back(std::move(j));
      }
      out << dump_json(doc) << '\n';
      break;
    }
    case Format::csv:
      out << "x,value,error_bound,method,work\n";
      for (const auto& r : rows) {
        out << format_real(r.x) << ',' << format_real(r.value) << ','
            << format_real(r.error_bound) << ',' << csv_field(r.method) << ',' << r.work << '\n';
      }
      break;
    case Format::text:
      if (rows.size() == 1) {
        const auto& r = rows.front();
        out << function << '(' << format_real(r.x) << ") = " << format_real(r.value) << '\n'
            << "  error bound: " << format_real(r.error_bound) << '\n'
            << "  method:      " << r.method << '\n'
            << "  work:        " << r.work << '\n';
        if (r.cancellation_warning) out << "  warning: heavy cancellation in the alternating series\n";
      } else {
        out << fmt::format("{:>24} {:>24} {:>24}  {}\n", "x", function, "error_bound", "method");
        for (const auto& r : rows) {
          out << fmt::format("{:>24} {:>24} {:>24}  {}\n", format_real(r.x), format_real(r.value),
                             format_real(r.error_bound), r.method);
        }
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Commands

struct EvalArgs {
  std::string function;
  std::string x;
  std::string method = "auto";
  std::optional<std::string> tol;
  std::string format = "text";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const double x = require_real("--x", a.x);
  const Tolerances tol = tolerances_from(a.tol);
  const Row row = evaluate(a.function, x, a.method, tol);

  Json inputs;
  inputs["function"] = a.function;
  inputs["x"] = x;
  inputs["method"] = a.method;
  if (a.tol) inputs["tol"] = tol.policy.abs_tol;
  inputs["format"] = a.format;
  print_rows(out, to_format(a.format), "eval", inputs, a.function, {row});
  return kExitOk;
}

struct TableArgs {
  std::string function;
  std::string x_min;
  std::string x_max;
  int points = 0;
  std::string method = "auto";
  std::optional<std::string> tol;
  std::string format = "text";
  bool skip_singular = false;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  const double lo = require_real("--x-min", a.x_min);
  const double hi = require_real("--x-max", a.x_max);
  if (!(lo < hi)) throw UsageError("--x-min must be less than --x-max");
  if (a.points < 2) throw UsageError("--points must be at least 2");
  const Tolerances tol = tolerances_from(a.tol);

  const auto n = static_cast<std::size_t>(a.points);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(n - 1));
  }

  // Each slot holds a row, or the exception that point raised.
  using Outcome = std::variant<Row, std::exception_ptr>;
  std::vector<Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        outcomes[i] = evaluate(a.function, grid[i], a.method, tol);
      } catch (...) {
        outcomes[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();

  std::vector<Row> rows;
  std::vector<double> skipped;
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* row = std::get_if<Row>(&outcomes[i])) {
      rows.push_back(*row);
      continue;
    }
    try {
      std::rethrow_exception(std::get<std::exception_ptr>(outcomes[i]));
    } catch (const DomainError& e) {
      if (!a.skip_singular) {
        throw DomainError(fmt::format("grid point x={} is outside the domain ({}); pass "
                                      "--skip-singular to omit such points",
                                      format_real(grid[i]), e.what()));
      }
      skipped.push_back(grid[i]);
    }
  }

  Json inputs;
  inputs["function"] = a.function;
  inputs["x_min"] = lo;
  inputs["x_max"] = hi;
  inputs["points"] = a.points;
  inputs["method"] = a.method;
  if (a.tol) inputs["tol"] = tol.policy.abs_tol;
  inputs["skip_singular"] = a.skip_singular;
  inputs["skipped"] = skipped;
  print_rows(out, to_format(a.format), "table", inputs, a.function, rows);
  return kExitOk;
}

struct ConstantRow {
  std::string quantity;
  std::string route;
  double value;
  double error_bound;
  double diff_from_first;
};

int cmd_constants(const std::string& format_name, std::ostream& out) {
  const SeriesPolicy policy;
  const QuadConfig cfg;
  std::vector<ConstantRow> rows;
  const auto add_group = [&rows](const std::string& quantity,
                                 const std::vector<std::pair<std::string, EvalResult>>& routes) {
    const double first = routes.front().second.value;
    for (const auto& [route, r] : routes) {
      rows.push_back({quantity, route, r.value, r.error_bound, r.value - first});
    }
  };

  const EvalResult ei1_quad = ei_quadrature(1.0, cfg);
  const EvalResult tail1 = puiseux_tail(1.0, policy);
  const EvalResult gamma_from_ei{ei1_quad.value - tail1.value,
                                 ei1_quad.error_bound + tail1.error_bound, Method::CpvQuadrature,
                                 ei1_quad.work + tail1.work};
  add_group("gamma",
            {{"integral", require_converged(gamma_integral(cfg), "gamma_integral")},
             {"harmonic_reference",
              EvalResult{gamma_reference(kGammaReferenceTerms),
                         gamma_reference_bound(kGammaReferenceTerms), Method::PuiseuxSeries,
                         kGammaReferenceTerms}},
             {"ei_minus_tail", gamma_from_ei}});
  add_group("ei_one", {{"series", ei_one(policy)}, {"quadrature", ei1_quad}});
  constexpr double root_tol = 1e-12;
  add_group("soldner_mu", {{"bisection_newton",
                            EvalResult{soldner_constant(root_tol, policy), root_tol,
                                       Method::PuiseuxSeries, 0}}});

  switch (to_format(format_name)) {
    case Format::json: {
      Json doc;
      doc["command"] = "constants";
      doc["inputs"] = Json::object();
      doc["results"] = Json::array();
      for (const auto& r : rows) {
        Json j;
        j["quantity"] = r.quantity;
        j["route"] = r.route;
        j["value"] = r.value;
        j["error_bound"] = r.error_bound;
        j["diff_from_first"] = r.diff_from_first;
        doc["results"].push_back(std::move(j));
      }
      out << dump_json(doc) << '\n';
      break;
    }
    case Format::csv:
      out << "quantity,route,value,error_bound,diff_from_first\n";
      for (const auto& r : rows) {
        out << csv_field(r.quantity) << ',' << csv_field(r.route) << ',' << format_real(r.value)
            << ',' << format_real(r.error_bound) << ',' << format_real(r.diff_from_first) << '\n';
      }
      break;
    case Format::text:
      for (const auto& r : rows) {
        out << fmt::format("{:<11} {:<19} {:>22}  bound {:<10.3g} diff {:.3g}\n", r.quantity,
                           r.route, format_real(r.value), r.error_bound, r.diff_from_first);
      }
      break;
  }
  return kExitOk;
}

int cmd_verify(const std::string& tol_scale_text, const std::string& format_name,
               std::ostream& out) {
  const double scale = require_real("--tol-scale", tol_scale_text);
  if (!(scale > 0.0)) throw UsageError("--tol-scale must be positive");
  const VerificationReport report = run_crosschecks({}, {}, scale);

  switch (to_format(format_name)) {
    case Format::json: {
      Json doc;
      doc["command"] = "verify";
      Json inputs;
      inputs["tol_scale"] = scale;
      doc["inputs"] = inputs;
      const Json body = report_to_json(report);
      for (const auto& [key, value] : body.items()) doc[key] = value;
      out << dump_json(doc) << '\n';
      break;
    }
    case Format::csv:
      out << "name,lhs,rhs,abs_diff,tolerance,pass,diff_finite,detail\n";
      for (const auto& r : report.records) {
        out << csv_field(r.name) << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ','
            << format_real(r.abs_diff) << ',' << format_real(r.tolerance) << ','
            << (r.pass ? "true" : "false") << ',' << (r.diff_finite ? "true" : "false") << ','
            << csv_field(r.detail) << '\n';
      }
      break;
    case Format::text: {
      std::size_t failed = 0;
      for (const auto& r : report.records) {
        failed += !r.pass;
        out << fmt::format("{} {:<48} |diff| {:<10.3g} tol {:.3g}", r.pass ? "PASS" : "FAIL",
                           r.name, r.abs_diff, r.tolerance);
        if (!r.detail.empty()) out << "  (" << r.detail << ')';
        out << '\n';
      }
      out << fmt::format("{} of {} checks passed; generated {}\n",
                         report.records.size() - failed, report.records.size(),
                         report.generated_at);
      break;
    }
  }
  return report.all_pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
  static const std::regex pattern(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  if (!std::regex_match(text.begin(), text.end(), pattern)) return std::nullopt;
  // from_chars rejects a leading '+'
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential integral toolkit: Ei, li, Goodwin-Staton and cross-checks", "eikit"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"text", "json", "csv"};
  const std::vector<std::string> functions = {"ei", "li", "goodwin_staton"};
  const std::vector<std::string> methods = {"auto", "series", "quadrature", "lemma1"};

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  eval->add_option("function", eval_args.function, "ei | li | goodwin_staton")
      ->required()
      ->check(CLI::IsMember(functions));
  eval->add_option("--x", eval_args.x, "Argument")->required();
  eval->add_option("--method", eval_args.method, "auto | series | quadrature | lemma1")
      ->check(CLI::IsMember(methods));
  eval->add_option("--tol", eval_args.tol, "Absolute tolerance");
  eval->add_option("--format", eval_args.format)->check(CLI::IsMember(formats));

  std::string constants_format = "text";
  auto* constants = app.add_subcommand("constants", "gamma, Ei(1) and mu by several routes");
  constants->add_option("--format", constants_format)->check(CLI::IsMember(formats));

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Tabulate a function on a uniform grid");
  table->add_option("function", table_args.function, "ei | li | goodwin_staton")
      ->required()
      ->check(CLI::IsMember(functions));
  table->add_option("--x-min", table_args.x_min)->required();
  table->add_option("--x-max", table_args.x_max)->required();
  table->add_option("--points", table_args.points)->required();
  table->add_option("--method", table_args.method)->check(CLI::IsMember(methods));
  table->add_option("--tol", table_args.tol, "Absolute tolerance");
  table->add_option("--format", table_args.format)->check(CLI::IsMember(formats));
  table->add_flag("--skip-singular", table_args.skip_singular,
                  "Omit grid points outside the function's domain instead of failing");

  std::string tol_scale = "1";
  std::string verify_format = "text";
  auto* verify = app.add_subcommand("verify", "Run every cross-check and report");
  verify->add_option("--tol-scale", tol_scale, "Multiply every tolerance by this factor");
  verify->add_option("--format", verify_format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_args, out);
    if (constants->parsed()) return cmd_constants(constants_format, out);
    if (table->parsed()) return cmd_table(table_args, out);
    return cmd_verify(tol_scale, verify_format, out);
  } catch (const UsageError& e) {
    err << "eikit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "eikit: domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "eikit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergence& e) {
    err << "eikit: no convergence: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "eikit: " << e.what() << '\n';
    return kExitNonConvergence;
  }
}

}  // namespace eikit::cli
