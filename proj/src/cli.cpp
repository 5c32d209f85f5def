#include "twin_taylor/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace twin_taylor {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kDigits = 20;

Error usage(const std::string& what) { return Error(ErrorKind::UsageError, what); }

std::vector<std::size_t> parse_orders(const std::string& text) {
  std::vector<std::size_t> orders;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw usage("--orders: expected comma-separated nonnegative integers, got '" + text + "'");
    }
    orders.push_back(std::stoul(item));
  }
  if (orders.empty()) throw usage("--orders: empty list");
  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (orders[i] <= orders[i - 1]) throw usage("--orders: orders must be strictly ascending, got '" + text + "'");
  }
  return orders;
}

PiAffine parse_expr(const std::string& flag, const std::string& text) {
  try {
    return parse_pi_affine(text);
  } catch (const Error& e) {
    throw usage(flag + ": cannot parse '" + text + "' as q*pi + r");
  }
}

Command parse_command(const std::string& text) {
  if (text == "verify") return Command::Verify;
  if (text == "ladder") return Command::Ladder;
  if (text == "constants") return Command::Constants;
  if (text == "remainder-max") return Command::RemainderMax;
  if (text == "export") return Command::Export;
  throw usage("unknown command '" + text + "' (verify, ladder, constants, remainder-max, export)");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw usage("--format: expected text, json or csv, got '" + text + "'");
}

OutputFormat default_format(Command c) {
  switch (c) {
    case Command::Verify: return OutputFormat::Json;
    case Command::Ladder:
    case Command::Export: return OutputFormat::Csv;
    default: return OutputFormat::Text;
  }
}

bool is_g_family(FunctionId id) { return id != FunctionId::F; }

void validate(RunConfig& cfg, bool format_given) {
  const Precision q(cfg.precision_budget + 32);
  const Enclosure pi = enc_pi(q);
  const Enclosure c = cfg.endpoint.enclose(q);
  if (!c.positive() || c.hi() >= pi.lo()) throw usage("--endpoint: must lie in (0, pi), got " + cfg.endpoint.to_string());
  if (cfg.beta) {
    const Enclosure b = cfg.beta->enclose(q);
    if (!b.positive() || b.lo() > pi.hi()) throw usage("--beta: must lie in (0, pi], got " + cfg.beta->to_string());
    if (c.lo() > b.hi()) throw usage("--endpoint: must not exceed --beta");
  }
  if (cfg.grid < 3) throw usage("--grid: must be at least 3, got " + std::to_string(cfg.grid));

  // which series the command builds
  const bool uses_g = cfg.command == Command::Verify ? (cfg.target == VerifyTarget::Statement2 ||
                                                         (cfg.target == VerifyTarget::Chain && is_g_family(cfg.function)))
                                                      : is_g_family(cfg.function);
  const bool uses_f = cfg.command == Command::Constants ||
                      (cfg.command == Command::Verify ? cfg.target != VerifyTarget::Statement2 : !uses_g);
  if ((uses_g || cfg.command == Command::Constants) && (cfg.truncation < 4 || cfg.truncation % 4 != 0)) {
    throw usage("--truncation: the g family needs a positive multiple of 4, got " + std::to_string(cfg.truncation));
  }
  if (uses_f && (cfg.truncation < 2 || cfg.truncation % 2 != 0)) {
    throw usage("--truncation: f needs an even value >= 2, got " + std::to_string(cfg.truncation));
  }
  const bool uses_orders = cfg.command == Command::Ladder || cfg.command == Command::Export ||
                           (cfg.command == Command::Verify && cfg.target == VerifyTarget::Chain);
  if (uses_orders && cfg.truncation < cfg.orders.back() + 2) {
    throw usage("--truncation: must be at least max(--orders) + 2 = " + std::to_string(cfg.orders.back() + 2));
  }
  if (cfg.command == Command::RemainderMax) {
    if (cfg.order < 1) throw usage("--order: must be at least 1");
    if (cfg.truncation < cfg.order + 2) throw usage("--truncation: must be at least --order + 2");
    if (sgn(cfg.tol) <= 0) throw usage("--tol: must be positive");
  }

  if (!format_given) cfg.output_format = default_format(cfg.command);
  const bool csv_ok = cfg.command == Command::Ladder || cfg.command == Command::Export ||
                      cfg.command == Command::Constants;
  if (cfg.output_format == OutputFormat::Csv && !csv_ok) throw usage("--format: csv is not available for this command");
  if (cfg.command == Command::Export && cfg.output_format != OutputFormat::Csv) {
    throw usage("--format: export only writes csv");
  }
}

// ---------------------------------------------------------------------------
// tables of enclosures for ladder and export

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Enclosure>> rows;
};

std::string scientific(const Rational& q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", to_double(q));
  return buf;
}

Rational max_width(const std::vector<Enclosure>& row) {
  Rational w = 0;
  for (const auto& e : row) w = std::max(w, Rational(e.width()));
  return w;
}

void write_table(const Table& t, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    Json j;
    j["header"] = t.header;
    j["rows"] = Json::array();
    for (const auto& row : t.rows) {
      Json cells = Json::array();
      for (const auto& e : row) cells.push_back({{"lo", to_fraction_string(e.lo())}, {"hi", to_fraction_string(e.hi())}});
      j["rows"].push_back(cells);
    }
    out << j.dump(2) << "\n";
    return;
  }
  const bool csv = format == OutputFormat::Csv;
  const std::size_t wide = kDigits + 4;
  auto cell = [&](const std::string& s, bool first) {
    if (csv) {
      out << (first ? "" : ",") << s;
    } else {
      out << (first ? "" : "  ") << s << std::string(s.size() < wide ? wide - s.size() : 0, ' ');
    }
  };
  for (std::size_t i = 0; i < t.header.size(); ++i) cell(t.header[i], i == 0);
  cell("max_width", false);
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) cell(to_decimal(row[i].mid(), kDigits), i == 0);
    cell(scientific(max_width(row)), false);
    out << "\n";
  }
}

std::vector<Enclosure> grid_points(const Enclosure& c, int grid) {
  std::vector<Enclosure> xs;
  for (int i = 0; i < grid; ++i) xs.emplace_back(floor_to_bits(c.lo() * Rational(i, grid - 1), 64));
  return xs;
}

// T_o for ascending orders, the function, then TT_o for descending orders.
Table ladder_table(const RunConfig& cfg) {
  const Precision p(cfg.precision_budget);
  const PaperFunction fn = build_function(cfg.function, cfg.truncation, cfg.beta);
  const Enclosure c = cfg.endpoint.enclose(Precision(cfg.precision_budget + 32));
  const Ladder ladder = build_ladder(fn.series, c, cfg.orders, p, closed_eval(cfg.function, c, p));

  Table t;
  t.header.push_back("x");
  for (std::size_t n : cfg.orders) t.header.push_back("T_" + std::to_string(n));
  t.header.push_back("f");
  for (auto it = cfg.orders.rbegin(); it != cfg.orders.rend(); ++it) t.header.push_back("𝕋_" + std::to_string(*it));

  for (const Enclosure& x : grid_points(c, cfg.grid)) {
    std::vector<Enclosure> row{x};
    for (const auto& poly : ladder.lower) row.push_back(eval_poly(poly, x, p));
    row.push_back(eval_with_tail(fn.series, x, p));
    for (auto it = ladder.upper.rbegin(); it != ladder.upper.rend(); ++it) row.push_back(eval_poly(*it, x, p));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// f and both remainders f - T_n, f - TT_n for every order.
Table export_table(const RunConfig& cfg) {
  const Precision p(cfg.precision_budget);
  const PaperFunction fn = build_function(cfg.function, cfg.truncation, cfg.beta);
  const Enclosure c = cfg.endpoint.enclose(Precision(cfg.precision_budget + 32));
  const Enclosure f_at_c = closed_eval(cfg.function, c, p);
  std::vector<SecondTaylorPoly> upper;
  for (std::size_t n : cfg.orders) upper.push_back(second_taylor(fn.series, n, c, p, f_at_c));

  Table t;
  t.header = {"x", "f"};
  for (std::size_t n : cfg.orders) {
    t.header.push_back("f-T_" + std::to_string(n));
    t.header.push_back("f-𝕋_" + std::to_string(n));
  }
  for (const Enclosure& x : grid_points(c, cfg.grid)) {
    std::vector<Enclosure> row{x, eval_with_tail(fn.series, x, p)};
    for (std::size_t i = 0; i < cfg.orders.size(); ++i) {
      row.push_back(remainder_eval(fn.series, RemainderKind::First, cfg.orders[i] + 1, std::nullopt, x, p));
      row.push_back(second_remainder_eval(fn.series, upper[i], x, p));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return quoted + "\"";
}

int write_constants(const RunConfig& cfg, const CertifyOptions& opts, std::ostream& out) {
  const std::vector<ConstantRow> rows = reproduce_constants(opts);
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.consistent; });
  if (cfg.output_format == OutputFormat::Json) {
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back({{"name", r.name},
                   {"lo", to_fraction_string(r.value.lo())},
                   {"hi", to_fraction_string(r.value.hi())},
                   {"quoted", r.quoted},
                   {"consistent", r.consistent}});
    }
    out << j.dump(2) << "\n";
  } else if (cfg.output_format == OutputFormat::Csv) {
    out << "name,lo,hi,quoted,consistent\n";
    for (const auto& r : rows) {
      out << csv_field(r.name) << "," << to_decimal_directed(r.value.lo(), kDigits, false) << ","
          << to_decimal_directed(r.value.hi(), kDigits, true) << "," << csv_field(r.quoted) << ","
          << (r.consistent ? "true" : "false") << "\n";
    }
  } else {
    std::size_t name_w = 0;
    for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
    for (const auto& r : rows) {
      out << r.name << std::string(name_w - r.name.size() + 2, ' ') << "[" << to_decimal_directed(r.value.lo(), kDigits, false)
          << ", " << to_decimal_directed(r.value.hi(), kDigits, true) << "]  quoted " << r.quoted << "  "
          << (r.consistent ? "ok" : "MISMATCH") << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

void write_remainder_max(const RunConfig& cfg, const CertifyOptions& opts, std::ostream& out) {
  const std::optional<PiAffine> b = cfg.kind == RemainderKind::Second ? std::optional(cfg.endpoint) : std::nullopt;
  const MaxSearchResult r =
      remainder_max(cfg.function, cfg.kind, cfg.order, b, PiAffine{0, 0}, cfg.endpoint, cfg.tol, opts);
  const std::string kind = cfg.kind == RemainderKind::First ? "first" : "second";
  if (cfg.output_format == OutputFormat::Json) {
    Json j;
    j["function"] = std::string(to_string(cfg.function));
    j["kind"] = kind;
    j["order"] = cfg.order;
    j["interval"] = {"0", cfg.endpoint.to_string()};
    j["argmax"] = {{"lo", to_fraction_string(r.argmax.lo())}, {"hi", to_fraction_string(r.argmax.hi())}};
    j["max"] = {{"lo", to_fraction_string(r.max_value.lo())}, {"hi", to_fraction_string(r.max_value.hi())}};
    j["samples"] = r.samples_used;
    j["refinement_depth"] = r.refinement_depth;
    out << j.dump(2) << "\n";
    return;
  }
  out << "function:  " << to_string(cfg.function) << "\n";
  out << "remainder: " << kind << ", index " << cfg.order << "\n";
  out << "interval:  [0, " << cfg.endpoint.to_string() << "]\n";
  out << "argmax in  [" << to_decimal_directed(r.argmax.lo(), kDigits, false) << ", "
      << to_decimal_directed(r.argmax.hi(), kDigits, true) << "]\n";
  out << "max in     [" << to_decimal_directed(r.max_value.lo(), kDigits, false) << ", "
      << to_decimal_directed(r.max_value.hi(), kDigits, true) << "]\n";
  out << "samples:   " << r.samples_used << " (refinement depth " << r.refinement_depth << ")\n";
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  CertifyOptions opts;
  opts.precision = cfg.precision_budget;
  opts.truncation = cfg.truncation;
  opts.grid = cfg.grid;
  switch (cfg.command) {
    case Command::Help:
      out << cfg.help_text;
      return 0;
    case Command::Verify: {
      CertificateReport r;
      if (cfg.target == VerifyTarget::Statement1) {
        r = verify_statement1(cfg.endpoint, opts);
      } else if (cfg.target == VerifyTarget::Chain) {
        r = verify_ladder_chain(cfg.function, cfg.endpoint, cfg.orders, opts);
      } else {
        r = verify_statement2_improvement(opts);
      }
      out << (cfg.output_format == OutputFormat::Json ? report_to_json(r) : report_to_text(r));
      return r.verdict == Verdict::Proved ? 0 : 1;
    }
    case Command::Ladder:
      write_table(ladder_table(cfg), cfg.output_format, out);
      return 0;
    case Command::Export:
      write_table(export_table(cfg), cfg.output_format, out);
      return 0;
    case Command::Constants:
      return write_constants(cfg, opts, out);
    case Command::RemainderMax:
      write_remainder_max(cfg, opts, out);
      return 0;
  }
  return 1;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Double-sided Taylor bounds with rigorous rational enclosures", "twin-taylor"};
  std::string command, target, function = "f", endpoint = "pi/2", orders = "0,2", format, out, beta, kind = "first",
                                   tol = "1/1000000";
  RunConfig cfg;
  long long truncation = 64;
  long long order = 3;
  app.add_option("command", command, "verify | ladder | constants | remainder-max | export")->required();
  app.add_option("target", target, "verify target: statement1 | chain | statement2");
  auto* function_opt = app.add_option("--function", function, "f | g | g1 | g2 (default f)");
  app.add_option("--endpoint", endpoint, "right endpoint c as q*pi + r (default pi/2)");
  app.add_option("--orders", orders, "strictly ascending ladder orders, e.g. 0,2,4 (default 0,2)");
  app.add_option("--grid", cfg.grid, "number of sample points (default 33)");
  app.add_option("--precision", cfg.precision_budget, "target width exponent: enclosures aim for 2^-N (default 64)");
  app.add_option("--truncation", truncation, "series truncation order (default 64)");
  auto* format_opt = app.add_option("--format", format, "text | json | csv");
  app.add_option("--out", out, "write the artifact to PATH instead of stdout");
  app.add_option("--beta", beta, "upper end of the g-family domain, in (0, pi] (default pi)");
  app.add_option("--kind", kind, "remainder-max: first | second (default first)");
  app.add_option("--order", order, "remainder-max: remainder index n (default 3)");
  app.add_option("--tol", tol, "remainder-max: argmax bracket width (default 1/1000000)");

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.command = Command::Help;
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw usage(e.what());
  }

  cfg.command = parse_command(command);
  if (cfg.command == Command::Verify) {
    if (target == "statement1") {
      cfg.target = VerifyTarget::Statement1;
    } else if (target == "chain") {
      cfg.target = VerifyTarget::Chain;
    } else if (target == "statement2") {
      cfg.target = VerifyTarget::Statement2;
    } else {
      throw usage("verify: expected target statement1, chain or statement2, got '" + target + "'");
    }
  } else if (!target.empty()) {
    throw usage("unexpected argument '" + target + "'");
  }
  if (cfg.command == Command::Verify && cfg.target == VerifyTarget::Statement1 && function_opt->count() > 0 &&
      function != "f") {
    throw usage("--function: statement1 is about f only");
  }

  try {
    cfg.function = parse_function_id(function);
  } catch (const Error&) {
    throw usage("--function: expected f, g, g1 or g2, got '" + function + "'");
  }
  cfg.endpoint = parse_expr("--endpoint", endpoint);
  cfg.orders = parse_orders(orders);
  if (!beta.empty()) cfg.beta = parse_expr("--beta", beta);
  if (truncation < 0) throw usage("--truncation: must be nonnegative");
  cfg.truncation = static_cast<std::size_t>(truncation);
  if (order < 0) throw usage("--order: must be nonnegative");
  cfg.order = static_cast<std::size_t>(order);
  if (cfg.precision_budget < 8 || cfg.precision_budget > 4096) {
    throw usage("--precision: must lie in [8, 4096], got " + std::to_string(cfg.precision_budget));
  }
  if (kind == "first") {
    cfg.kind = RemainderKind::First;
  } else if (kind == "second") {
    cfg.kind = RemainderKind::Second;
  } else {
    throw usage("--kind: expected first or second, got '" + kind + "'");
  }
  try {
    cfg.tol = parse_rational(tol);
  } catch (const Error&) {
    throw usage("--tol: cannot parse '" + tol + "'");
  }
  if (format_opt->count() > 0) cfg.output_format = parse_format(format);
  if (!out.empty()) cfg.output_path = out;

  validate(cfg, format_opt->count() > 0);
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream artifact;
  int code = 0;
  try {
    code = dispatch(config, artifact);
  } catch (const Error& e) {
    err << "twin-taylor: " << e.what() << "\n";
    if (e.kind() == ErrorKind::UsageError) return 2;
    return e.kind() == ErrorKind::IoError ? 3 : 1;
  }
  if (!config.output_path) {
    out << artifact.str();
    return code;
  }
  std::ofstream file(*config.output_path, std::ios::binary);
  file << artifact.str();
  file.close();
  if (!file) {
    err << "twin-taylor: " << Error(ErrorKind::IoError, "cannot write '" + *config.output_path + "'").what() << "\n";
    return 3;
  }
  return code;
}

int run_main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argv);
  } catch (const Error& e) {
    err << "twin-taylor: " << e.what() << "\n";
    if (e.kind() == ErrorKind::UsageError) err << "run 'twin-taylor --help' for usage\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  }
  return run(cfg, out, err);
}

}  // namespace twin_taylor
