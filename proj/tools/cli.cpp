#include "cli.hpp"

#include "verify.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/matrix_elements.hpp"
#include "jacobi/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unistd.h>

#ifndef JACOBI_VERSION
#define JACOBI_VERSION "0.0.0"
#endif

namespace jacobi::cli {

using json = nlohmann::ordered_json;

namespace {

// Bad user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::optional<double> k;
  std::string alpha = "0,0";
  std::string z = "0,0";
  std::string w = "0,0";
  std::optional<std::string> w_prime;
  std::optional<std::string> z2;
  std::optional<std::string> w2;
  std::vector<std::size_t> dims{8};
  std::vector<int> trunc;
  std::optional<double> tol;
  std::string form = "kummer";
  Format format = Format::json;
  std::string out;
  std::uint64_t seed = 1;
  std::string suite;
};

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  while (first != last && *first == ' ') ++first;
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError("cannot parse " + std::string(what) + " component '" + std::string(s) + "'");
  }
  return v;
}

// "re,im" or a bare real.
cplx parse_complex(const std::string& text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    return parse_real(text, what);
  }
  if (text.find(',', comma + 1) != std::string::npos) {
    throw UsageError(std::string(what) + ": expected 're,im', got '" + text + "'");
  }
  return {parse_real(std::string_view(text).substr(0, comma), what),
          parse_real(std::string_view(text).substr(comma + 1), what)};
}

cplx parse_disk(const std::string& text, std::string_view what) {
  const cplx w = parse_complex(text, what);
  if (!(std::abs(w) < 1.0)) {
    throw UsageError(std::string(what) + ": |w| must be < 1");
  }
  return w;
}

BargmannIndex require_k(const RunConfig& c) {
  if (!c.k) {
    throw UsageError("--k is required for '" + c.command + "'");
  }
  try {
    return BargmannIndex(*c.k);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::size_t dim_at(const RunConfig& c, std::size_t i, std::size_t fallback) {
  const std::size_t d = i < c.dims.size() ? c.dims[i] : fallback;
  if (d == 0 || d > 4096) {
    throw UsageError("--dims entries must be in [1, 4096]");
  }
  return d;
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json params_json(const RunConfig& c) {
  json p;
  if (c.k) p["k"] = *c.k;
  p["alpha"] = c.alpha;
  p["z"] = c.z;
  p["w"] = c.w;
  if (c.w_prime) p["w_prime"] = *c.w_prime;
  if (c.z2) p["z2"] = *c.z2;
  if (c.w2) p["w2"] = *c.w2;
  p["dims"] = c.dims;
  p["trunc"] = c.trunc;
  if (c.tol) p["tol"] = *c.tol;
  p["form"] = c.form;
  p["seed"] = c.seed;
  if (!c.suite.empty()) p["suite"] = c.suite;
  return p;
}

json envelope(const RunConfig& c, json data, std::optional<double> tail_bound, std::optional<double> max_err) {
  json j;
  j["meta"] = {{"command", c.command}, {"params", params_json(c)}, {"version", JACOBI_VERSION},
               {"timestamp", timestamp()}};
  j["data"] = std::move(data);
  j["diagnostics"] = {{"tail_bound", tail_bound ? json(*tail_bound) : json(nullptr)},
                      {"max_err", max_err ? json(*max_err) : json(nullptr)}};
  return j;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* kind_name(me::TableKind kind) {
  switch (kind) {
  case me::TableKind::displacement: return "displacement";
  case me::TableKind::squeeze: return "squeeze";
  case me::TableKind::jacobi: return "jacobi";
  }
  return "?";
}

json table_json(const me::MeTable& t) {
  json d;
  d["kind"] = kind_name(t.kind);
  d["rows"] = t.rows;
  d["cols"] = t.cols;
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.cols; ++j) {
      row.push_back(cj(t.entries(i, j)));
    }
    rows.push_back(std::move(row));
  }
  d["entries"] = std::move(rows);
  if (t.kind == me::TableKind::jacobi) {
    d["fock_dim"] = t.fock_dim;
    d["prime_dim"] = t.prime_dim;
    d["index"] = "row = n * prime_dim + m, n = 2s + eps";
    json tails = json::array();
    for (std::size_t i = 0; i < t.rows; ++i) {
      tails.push_back(json(std::vector<double>(t.tail_bounds.begin() + static_cast<std::ptrdiff_t>(i * t.cols),
                                               t.tail_bounds.begin() + static_cast<std::ptrdiff_t>((i + 1) * t.cols))));
    }
    d["tail_bounds"] = std::move(tails);
  }
  return d;
}

std::string table_csv(const me::MeTable& t) {
  const bool tails = t.kind == me::TableKind::jacobi;
  std::ostringstream s;
  s << (tails ? "row,col,re,im,tail_bound\n" : "row,col,re,im\n");
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      const cplx v = t.entries(i, j);
      s << i << ',' << j << ',' << g17(v.real()) << ',' << g17(v.imag());
      if (tails) {
        s << ',' << g17(t.tail_bounds[i * t.cols + j]);
      }
      s << '\n';
    }
  }
  return s.str();
}

struct Artifact {
  std::string text;
  int code = 0;
};

Artifact render_table(const RunConfig& c, const me::MeTable& t, std::optional<double> tail,
                      std::optional<double> max_err) {
  if (c.format == Format::csv) {
    return {table_csv(t)};
  }
  return {envelope(c, table_json(t), tail, max_err).dump(2) + "\n"};
}

Artifact cmd_displacement(const RunConfig& c) {
  const cplx alpha = parse_complex(c.alpha, "--alpha");
  const std::size_t n = dim_at(c, 0, 8);
  const auto t = me::me_table(me::TableKind::displacement, BargmannIndex(1.0), alpha, n);
  return render_table(c, t, std::nullopt, std::nullopt);
}

Artifact cmd_squeeze(const RunConfig& c) {
  const BargmannIndex k = require_k(c);
  const cplx w = parse_disk(c.w, "--w");
  const std::size_t n = dim_at(c, 0, 8);
  me::TableOptions o;
  o.form = c.form == "h11" ? me::SqueezeForm::h11 : me::SqueezeForm::kummer;
  const auto t = me::me_table(me::TableKind::squeeze, k, w, n, o);
  std::optional<double> max_err;
  if (c.form == "both") {
    o.form = me::SqueezeForm::h11;
    const auto h = me::me_table(me::TableKind::squeeze, k, w, n, o);
    double worst = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
      const cplx a = t.entries.data()[i];
      const cplx b = h.entries.data()[i];
      const double diff = std::abs(a - b);
      worst = std::max(worst, std::abs(a) > 0.0 ? diff / std::abs(a) : diff);
    }
    max_err = worst;
  }
  return render_table(c, t, std::nullopt, max_err);
}

Artifact cmd_jacobi(const RunConfig& c) {
  const BargmannIndex k = require_k(c);
  if (k.prime() <= 1e-12) {
    throw UsageError("jacobi: needs k > 1/4 (k' = k - 1/4 > 0)");
  }
  const cplx alpha = parse_complex(c.alpha, "--alpha");
  me::TableOptions o;
  o.w = parse_disk(c.w, "--w");
  if (c.w_prime) {
    o.w_prime = parse_disk(*c.w_prime, "--w-prime");
  }
  if (!c.trunc.empty()) {
    if (c.trunc[0] < 0) throw UsageError("--trunc must be nonnegative");
    o.s_max = c.trunc[0];
  }
  o.tail_tol = c.tol.value_or(1e-10);
  const std::size_t n = dim_at(c, 0, 4);
  o.prime_dim = dim_at(c, 1, 1);
  const auto t = me::me_table(me::TableKind::jacobi, k, alpha, n, o);
  const double tail = t.tail_bounds.empty() ? 0.0 : *std::max_element(t.tail_bounds.begin(), t.tail_bounds.end());
  return render_table(c, t, tail, std::nullopt);
}

Artifact cmd_coefficients(const RunConfig& c) {
  const BargmannIndex k = require_k(c);
  const CsPoint p(parse_complex(c.z, "--z"), parse_disk(c.w, "--w"));
  const int n_max = c.trunc.size() > 0 ? c.trunc[0] : 16;
  const int m_max = c.trunc.size() > 1 ? c.trunc[1] : n_max;
  if (n_max < 0 || m_max < 0 || n_max > 4096 || m_max > 4096) {
    throw UsageError("--trunc entries must be in [0, 4096]");
  }
  const CoeffVector v = states::cs_coefficients(p, k, n_max, m_max);
  if (c.format == Format::csv) {
    std::ostringstream s;
    s << "n,m,re,im\n";
    for (int i = 0; i <= v.n_max(); ++i) {
      for (int j = 0; j <= v.m_max(); ++j) {
        s << i << ',' << j << ',' << g17(v(i, j).real()) << ',' << g17(v(i, j).imag()) << '\n';
      }
    }
    return {s.str()};
  }
  json rows = json::array();
  for (int i = 0; i <= v.n_max(); ++i) {
    json row = json::array();
    for (int j = 0; j <= v.m_max(); ++j) {
      row.push_back(cj(v(i, j)));
    }
    rows.push_back(std::move(row));
  }
  json d{{"n_max", v.n_max()}, {"m_max", v.m_max()}, {"coeffs", std::move(rows)}};
  return {envelope(c, std::move(d), v.tail_estimate(), std::nullopt).dump(2) + "\n"};
}

Artifact cmd_kernel(const RunConfig& c) {
  const BargmannIndex k = require_k(c);
  const CsPoint p1(parse_complex(c.z, "--z"), parse_disk(c.w, "--w"));
  const CsPoint p2(c.z2 ? parse_complex(*c.z2, "--z2") : p1.z(), c.w2 ? parse_disk(*c.w2, "--w2") : p1.w());
  const cplx log_k = states::log_kernel(p1, p2, k);
  const cplx value = states::kernel(p1, p2, k);
  if (c.format == Format::csv) {
    return {"re,im,log_re,log_im\n" + g17(value.real()) + ',' + g17(value.imag()) + ',' + g17(log_k.real()) + ',' +
            g17(log_k.imag()) + '\n'};
  }
  json d{{"value", cj(value)}, {"log_value", cj(log_k)}};
  return {envelope(c, std::move(d), std::nullopt, std::nullopt).dump(2) + "\n"};
}

Artifact cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  o.seed = c.seed;
  if (c.k) {
    o.k = require_k(c).value();
  }
  o.tol = c.tol;
  std::vector<std::string> names;
  if (c.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(c.suite);
  }
  std::vector<VerifyReport> reports;
  for (const auto& name : names) {
    reports.push_back(run_suite(name, o));
  }
  int oracle_warnings = 0;
  for (const auto& r : reports) {
    oracle_warnings += r.oracle_warnings;
  }
  if (oracle_warnings > 0) {
    warn("verify: " + std::to_string(oracle_warnings) +
         " oracle truncation warnings counted, not printed (oracle_warnings in the report)");
  }
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  double max_err = 0.0;
  for (const auto& r : reports) {
    max_err = std::max(max_err, r.max_abs_err);
  }
  const int code = pass ? 0 : 1;
  if (c.format == Format::csv) {
    std::ostringstream s;
    s << "suite,cases,max_abs_err,max_rel_err,pass\n";
    for (const auto& r : reports) {
      s << r.suite << ',' << r.cases << ',' << g17(r.max_abs_err) << ',' << g17(r.max_rel_err) << ','
        << (r.pass ? "true" : "false") << '\n';
    }
    return {s.str(), code};
  }
  json data;
  if (reports.size() == 1) {
    data = to_json(reports.front());
  } else {
    json list = json::array();
    for (const auto& r : reports) {
      list.push_back(to_json(r));
    }
    data = {{"suite", "all"}, {"pass", pass}, {"reports", std::move(list)}};
  }
  return {envelope(c, std::move(data), std::nullopt, max_err).dump(2) + "\n", code};
}

// Writes next to the target and renames, so a failed run never leaves a
// partial file behind.
void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    f << text;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to '" + path + "' failed: " + ec.message());
  }
}

class WarningScope {
public:
  explicit WarningScope(std::ostream& err)
      : previous_(set_warning_handler([&err](std::string_view m) { err << "jacobi-cs: warning: " << m << '\n'; })) {}
  ~WarningScope() { set_warning_handler(std::move(previous_)); }
  WarningScope(const WarningScope&) = delete;
  WarningScope& operator=(const WarningScope&) = delete;

private:
  WarningHandler previous_;
};

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  sub->add_option("--out", c.out, "Write to PATH instead of stdout");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Coherent states and matrix elements of the Jacobi group G^J_1", "jacobi-cs"};
  app.set_version_flag("--version", JACOBI_VERSION);
  app.require_subcommand(1);

  auto* disp = app.add_subcommand("displacement", "Table <phi_m|D(alpha)|phi_n>");
  disp->add_option("--alpha", c.alpha, "alpha as re,im");
  disp->add_option("--dims", c.dims, "Table size N")->delimiter(',');
  add_common(disp, c);

  auto* sq = app.add_subcommand("squeeze", "Table <phi_{km'}|S(w)|phi_{km}>");
  sq->add_option("--k", c.k, "Bargmann index");
  sq->add_option("--w", c.w, "w as re,im, |w| < 1");
  sq->add_option("--dims", c.dims, "Table size N")->delimiter(',');
  sq->add_option("--form", c.form, "h11, kummer, or both (reports the discrepancy)")
      ->check(CLI::IsMember({"h11", "kummer", "both"}));
  add_common(sq, c);

  auto* jac = app.add_subcommand("jacobi", "Table of <phi_n' x phi_k'm'|D(alpha) S(w,w')|phi_n x phi_k'm>");
  jac->add_option("--k", c.k, "Total Bargmann index k = k' + 1/4, k > 1/4");
  jac->add_option("--alpha", c.alpha, "alpha as re,im");
  jac->add_option("--w", c.w, "w as re,im");
  jac->add_option("--w-prime", c.w_prime, "w' as re,im (default: w)");
  jac->add_option("--dims", c.dims, "Fock size[,K' size]")->delimiter(',');
  jac->add_option("--trunc", c.trunc, "s_max of the internal Fock sum")->delimiter(',');
  jac->add_option("--tol", c.tol, "Maximum tail bound (default 1e-10)");
  add_common(jac, c);

  auto* coef = app.add_subcommand("coefficients", "Coefficients of e_{z,w} in the product basis");
  coef->add_option("--k", c.k, "Bargmann index k >= 1/4");
  coef->add_option("--z", c.z, "z as re,im");
  coef->add_option("--w", c.w, "w as re,im");
  coef->add_option("--trunc", c.trunc, "n_max[,m_max]")->delimiter(',');
  add_common(coef, c);

  auto* ker = app.add_subcommand("kernel", "Reproducing kernel K(z1,w1; z2,w2)");
  ker->add_option("--k", c.k, "Bargmann index");
  ker->add_option("--z", c.z, "z1 as re,im");
  ker->add_option("--w", c.w, "w1 as re,im");
  ker->add_option("--z2", c.z2, "z2 (default z1)");
  ker->add_option("--w2", c.w2, "w2 (default w1)");
  add_common(ker, c);

  auto* ver = app.add_subcommand("verify", "Run an invariant suite against the oracles");
  std::vector<std::string> suites = suite_names();
  suites.emplace_back("all");
  ver->add_option("suite", c.suite, "Suite name")->required()->check(CLI::IsMember(suites));
  ver->add_option("--seed", c.seed, "Seed of the sample generator");
  ver->add_option("--k", c.k, "Restrict the k sweep");
  ver->add_option("--tol", c.tol, "Override the suite tolerance");
  add_common(ver, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << JACOBI_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "jacobi-cs: " << e.what() << '\n';
    return 2;
  }

  for (auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
  }
  if (c.tol && !(*c.tol > 0.0)) {
    err << "jacobi-cs: --tol must be positive\n";
    return 2;
  }

  WarningScope warnings(err);
  try {
    Artifact a;
    if (c.command == "displacement") a = cmd_displacement(c);
    else if (c.command == "squeeze") a = cmd_squeeze(c);
    else if (c.command == "jacobi") a = cmd_jacobi(c);
    else if (c.command == "coefficients") a = cmd_coefficients(c);
    else if (c.command == "kernel") a = cmd_kernel(c);
    else a = cmd_verify(c);

    if (c.out.empty()) {
      out << a.text;
    } else {
      write_atomic(c.out, a.text);
    }
    if (a.code != 0) {
      err << "jacobi-cs: verification failed\n";
    }
    return a.code;
  } catch (const UsageError& e) {
    err << "jacobi-cs: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "jacobi-cs: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "jacobi-cs: " << e.what() << '\n';
    return 1;
  }
}

} // namespace jacobi::cli
