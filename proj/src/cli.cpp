#include "pdot/cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdot/modforms.hpp"
#include "pdot/partitions.hpp"
#include "pdot/radu.hpp"
#include "pdot/verify.hpp"

namespace pdot::cli {

namespace {

struct FlagSpec {
  std::string name;
  bool takes_value;
  bool required;
  std::string help;
};

struct SubcommandSpec {
  std::string name;
  std::string description;
  std::vector<FlagSpec> flags;
};

const std::vector<SubcommandSpec>& specs() {
  static const std::vector<SubcommandSpec> table = {
      {"expand",
       "Print the q-expansion of an eta-quotient, one 'n<TAB>c(n)' line per coefficient",
       {{"eta", true, true, "eta-quotient as N;scalar;d1:r1,d2:r2,..."},
        {"order", true, false, "number of coefficients (default 20)"},
        {"mod", true, false, "reduce coefficients modulo this integer"},
        {"json", true, false, "also write the expansion as JSON to this path"}}},
      {"pdot",
       "Print PDO_t(n)",
       {{"n", true, true, "index n >= 0"},
        {"enum", false, false, "count by enumerating partitions into odd parts"},
        {"series", false, false, "print every value PDO_t(0..n) from the generating function"},
        {"mod", true, false, "reduce values modulo this integer"},
        {"json", true, false, "also write the values as JSON to this path"}}},
      {"radu",
       "Run the Radu criterion and emit a certificate; exit 0 iff the congruence is certified",
       {{"m", true, true, "modulus of the progression"},
        {"M", true, true, "level of the generating eta-product"},
        {"N", true, true, "level used for the criterion"},
        {"r", true, true, "exponents r_delta over ascending divisors of M, comma separated"},
        {"t", true, true, "residue class, 0 <= t < m"},
        {"rprime", true, true, "auxiliary exponents over ascending divisors of N, comma separated"},
        {"u", true, true, "congruence modulus"},
        {"json", true, false, "write the certificate to this path instead of stdout"}}},
      {"sturm",
       "Print the Sturm bound for weight and level",
       {{"level", true, true, "level N"},
        {"weight", true, true, "integral weight"},
        {"same-char", false, false, "both forms share a character"},
        {"json", true, false, "also write the bound as JSON to this path"}}},
      {"check",
       "Run verification suites and print one JSON report per line",
       {{"suite", true, true, "suite name, comma separated list, or 'all'"},
        {"format", true, false, "json (default) or text"},
        {"parallel", false, false, "run suites concurrently"},
        {"k-max", true, false, "largest k for the 3-adic suites (default 3)"},
        {"sturm-k-max", true, false, "largest k checked to the Sturm bound (default 3)"},
        {"order", true, false, "coefficient order for the dissection identities (default 500)"},
        {"json", true, false, "also write all reports as a JSON array to this path"}}},
  };
  return table;
}

const SubcommandSpec& spec_for(const std::string& name) {
  for (const auto& s : specs())
    if (s.name == name) return s;
  throw UsageError("unknown subcommand '" + name + "'");
}

std::int64_t to_int(const Invocation& inv, const std::string& flag) {
  const std::string& text = inv.flags.at(flag);
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw UsageError("--" + flag + ": expected a decimal integer, got '" + text + "'");
  return value;
}

std::int64_t to_int_or(const Invocation& inv, const std::string& flag, std::int64_t fallback) {
  return inv.has(flag) ? to_int(inv, flag) : fallback;
}

std::int64_t to_positive(const Invocation& inv, const std::string& flag) {
  const auto v = to_int(inv, flag);
  if (v < 1) throw UsageError("--" + flag + " must be positive");
  return v;
}

std::vector<std::int64_t> to_csv(const Invocation& inv, const std::string& flag) {
  std::vector<std::int64_t> out;
  std::stringstream ss(inv.flags.at(flag));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::int64_t value = 0;
    const auto* end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, value);
    if (item.empty() || ec != std::errc() || ptr != end)
      throw UsageError("--" + flag + ": bad list entry '" + item + "'");
    out.push_back(value);
  }
  return out;
}

std::optional<series::Domain> domain_flag(const Invocation& inv) {
  if (!inv.has("mod")) return std::nullopt;
  const auto m = to_int(inv, "mod");
  if (m < 2) throw UsageError("--mod must be at least 2");
  return series::Domain::residue(static_cast<std::uint64_t>(m));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text << '\n';
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

nlohmann::json coefficient_array(const series::TruncSeries& s) {
  auto arr = nlohmann::json::array();
  for (std::size_t n = 0; n < s.order(); ++n) arr.push_back(s.coeff(n).str());
  return arr;
}

int run_expand(const Invocation& inv, std::ostream& out) {
  const auto eq = modforms::parse_eta(inv.flags.at("eta"));
  const auto order = to_int_or(inv, "order", 20);
  if (order < 0) throw UsageError("--order must be >= 0");
  const auto domain = domain_flag(inv).value_or(series::Domain::exact());
  const auto s = modforms::q_expansion(eq, static_cast<std::size_t>(order), domain);
  out << series::to_text(s);
  if (inv.has("json"))
    write_file(inv.flags.at("json"), nlohmann::json{{"eta", modforms::format_eta(eq)},
                                                    {"order", order},
                                                    {"domain", domain.to_string()},
                                                    {"coefficients", coefficient_array(s)}}
                                         .dump());
  return kSuccess;
}

int run_pdot(const Invocation& inv, std::ostream& out) {
  const auto n = to_int(inv, "n");
  if (n < 0) throw UsageError("--n must be >= 0");
  if (inv.has("enum") && inv.has("series")) throw UsageError("--enum and --series are exclusive");
  const auto domain = domain_flag(inv);
  const auto reduce = [&](BigInt v) {
    if (domain) v %= domain->modulus();
    return v;
  };

  std::vector<std::pair<std::int64_t, BigInt>> rows;
  if (inv.has("enum")) {
    rows.emplace_back(n, reduce(partitions::pdo_t(static_cast<int>(n))));
  } else {
    const auto s = partitions::pdo_t_series(static_cast<std::size_t>(n) + 1,
                                            domain.value_or(series::Domain::exact()));
    const std::int64_t first = inv.has("series") ? 0 : n;
    for (std::int64_t i = first; i <= n; ++i) rows.emplace_back(i, s.coeff(static_cast<std::size_t>(i)));
  }
  auto values = nlohmann::json::array();
  for (const auto& [i, v] : rows) {
    out << i << '\t' << v << '\n';
    values.push_back({{"n", i}, {"value", v.str()}});
  }
  if (inv.has("json")) write_file(inv.flags.at("json"), nlohmann::json{{"pdo_t", values}}.dump());
  return kSuccess;
}

int run_radu(const Invocation& inv, std::ostream& out, std::ostream& err) {
  radu::RaduInstance inst{to_positive(inv, "m"), to_positive(inv, "M"), to_positive(inv, "N"), to_csv(inv, "r"),
                          to_int(inv, "t")};
  const radu::AuxExponents aux{to_csv(inv, "rprime")};
  const auto u = to_int(inv, "u");
  if (u < 2) throw UsageError("--u must be at least 2");
  try {
    const auto cert = radu::radu_verify(inst, aux, static_cast<std::uint64_t>(u));
    const auto text = radu::to_json(cert).dump(2);
    if (inv.has("json"))
      write_file(inv.flags.at("json"), text);
    else
      out << text << '\n';
    if (!cert.verdict && cert.first_failure)
      err << "coefficient check failed at t' = " << cert.first_failure->t_prime << ", n = " << cert.first_failure->n
          << " (residue " << cert.first_failure->residue << ")\n";
    return cert.verdict ? kSuccess : kCheckFailed;
  } catch (const radu::RaduInapplicable& e) {
    err << "criterion not applicable: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run_sturm(const Invocation& inv, std::ostream& out) {
  const auto bound = modforms::sturm_bound(to_int(inv, "weight"), to_positive(inv, "level"), inv.has("same-char"));
  out << bound << '\n';
  if (inv.has("json")) write_file(inv.flags.at("json"), nlohmann::json{{"sturm_bound", bound}}.dump());
  return kSuccess;
}

int run_check(const Invocation& inv, std::ostream& out) {
  std::vector<std::string> names;
  const std::string& requested = inv.flags.at("suite");
  if (requested == "all") {
    names = verify::suite_names();
  } else {
    std::stringstream ss(requested);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
  }
  const auto known = verify::suite_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw UsageError("unknown suite '" + n + "'");

  verify::Format format = verify::Format::json;
  if (inv.has("format")) {
    const auto& f = inv.flags.at("format");
    if (f == "text")
      format = verify::Format::text;
    else if (f != "json")
      throw UsageError("--format must be json or text");
  }
  verify::SuiteParams params;
  params.k_max = static_cast<int>(to_int_or(inv, "k-max", params.k_max));
  params.sturm_k_max = static_cast<int>(to_int_or(inv, "sturm-k-max", params.sturm_k_max));
  if (inv.has("order")) params.identity_order = static_cast<std::size_t>(to_positive(inv, "order"));
  if (params.k_max < 0 || params.sturm_k_max < 0) throw UsageError("--k-max and --sturm-k-max must be >= 0");

  const auto reports = verify::run_suites(names, params, inv.has("parallel"));
  bool all_passed = true;
  auto array = nlohmann::json::array();
  for (const auto& r : reports) {
    const auto text = verify::emit_report(r, format);
    out << text;
    if (format == verify::Format::json) out << '\n';
    all_passed = all_passed && r.passed();
    if (inv.has("json")) array.push_back(nlohmann::json::parse(verify::emit_report(r, verify::Format::json)));
  }
  if (inv.has("json")) write_file(inv.flags.at("json"), array.dump());
  return all_passed ? kSuccess : kCheckFailed;
}

}  // namespace

std::vector<std::string> subcommands() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.push_back(s.name);
  return out;
}

Invocation parse(const std::vector<std::string>& args) {
  CLI::App app{"Exact checks of congruences for partitions with designated summands and odd parts", "pdot"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, CLI::App*> apps;
  for (const auto& spec : specs()) {
    auto* sc = app.add_subcommand(spec.name, spec.description);
    apps[spec.name] = sc;
    for (const auto& flag : spec.flags) {
      if (flag.takes_value) {
        auto* opt = sc->add_option("--" + flag.name, storage[spec.name][flag.name], flag.help);
        opt->allow_extra_args(false);
        if (flag.required) opt->required();
      } else {
        sc->add_flag("--" + flag.name, flag.help);
      }
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& spec : specs()) {
    auto* sc = apps.at(spec.name);
    if (!sc->parsed()) continue;
    Invocation inv{spec.name, {}};
    for (const auto& flag : spec.flags) {
      if (sc->count("--" + flag.name) == 0) continue;
      inv.flags[flag.name] = flag.takes_value ? storage[spec.name][flag.name] : std::string();
    }
    return inv;
  }
  throw UsageError("a subcommand is required");
}

std::vector<std::string> render(const Invocation& inv) {
  const auto& spec = spec_for(inv.subcommand);
  std::vector<std::string> out{inv.subcommand};
  for (const auto& [name, value] : inv.flags) {
    const auto it = std::find_if(spec.flags.begin(), spec.flags.end(), [&](const FlagSpec& f) { return f.name == name; });
    if (it == spec.flags.end()) throw UsageError("unknown flag --" + name + " for " + inv.subcommand);
    out.push_back(it->takes_value ? "--" + name + "=" + value : "--" + name);
  }
  return out;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    if (inv.subcommand == "expand") return run_expand(inv, out);
    if (inv.subcommand == "pdot") return run_pdot(inv, out);
    if (inv.subcommand == "radu") return run_radu(inv, out, err);
    if (inv.subcommand == "sturm") return run_sturm(inv, out);
    if (inv.subcommand == "check") return run_check(inv, out);
    err << "unknown subcommand '" << inv.subcommand << "'\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }
}

}  // namespace pdot::cli
