#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equidist/discrepancy.hpp"
#include "equidist/errors.hpp"
#include "equidist/families.hpp"
#include "equidist/mahler.hpp"
#include "equidist/poly_format.hpp"
#include "equidist/potential.hpp"
#include "equidist/rootfinder.hpp"

namespace equidist::cli {

inline constexpr int schema_version = 1;

enum Status : int { ok = 0, usage_failure = 1, report_failure = 2, numerical_failure = 3 };

/// Bad flag combinations and unwritable outputs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Roots, Measure, Stats, Verify, Growth, Sweep };
enum class Format { Text, Csv, Json };

struct RunConfig {
  Command command = Command::Verify;
  std::optional<std::string> family;
  std::optional<std::string> polynomial;
  long shift = 0;
  std::string domain = "disk";
  std::optional<long> n_min;
  std::optional<long> n_max;
  std::string output;     // empty: stdout
  std::string plot_data;  // directory, empty: none
  std::optional<Format> format;
  std::string theorem;
  std::string phi;  // builtin test function, empty: per-domain default
  std::optional<double> r;
  int bins = 8;
  std::uint64_t seed = RootOptions{}.seed;
  double target_radius = RootOptions{}.target_radius;
  int max_sweeps = RootOptions{}.max_sweeps;
  bool corrupt_rhs = false;  // test fixture: every RHS becomes -1
};

inline Command parse_command(const std::string& s) {
  if (s == "roots") return Command::Roots;
  if (s == "measure") return Command::Measure;
  if (s == "stats") return Command::Stats;
  if (s == "verify") return Command::Verify;
  if (s == "growth") return Command::Growth;
  if (s == "sweep") return Command::Sweep;
  throw UsageError("unknown command '" + s + "'");
}

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw UsageError("unknown format '" + s + "' (expected csv or json)");
}

/// %.17g, with nan/inf spelled out and -0 printed as 0.
inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

/// Non-finite values become null.
inline nlohmann::json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x == 0.0 ? 0.0 : x;
}

inline std::string pass_text(const DiscrepancyReport& r) {
  if (!r.threshold_met) return "n/a";
  return r.pass ? "true" : "false";
}

namespace detail {

struct Selection {
  FamilySpec spec;
  long n_min = 1;
  long n_max = std::numeric_limits<long>::max();
};

inline Selection select(const RunConfig& c) {
  if (c.family.has_value() == c.polynomial.has_value())
    throw UsageError("exactly one of --family or a literal polynomial is required");
  Selection s;
  s.spec = c.family ? parse_family(*c.family, c.shift) : FamilySpec{FamilyKind::Custom, {}, c.shift, parse_polynomial(*c.polynomial)};
  const bool ranged = s.spec.kind != FamilyKind::Custom && !s.spec.parameter;
  if (ranged && !c.n_max) throw UsageError("--n-max is required for a family range");
  s.n_min = c.n_min.value_or(1);
  if (c.n_max) s.n_max = *c.n_max;
  if (s.n_min > s.n_max) throw UsageError("empty n-range: --n-min exceeds --n-max");
  return s;
}

inline std::vector<std::string> sweep_theorems(const Domain& E) {
  switch (E.kind) {
    case DomainKind::UnitDisk: return {"et31", "thm31", "energy", "cor32"};
    case DomainKind::Segment:
      if (E.a == -2.0) return {"thm34", "energy", "cor35", "cor36"};
      return {"thm34", "energy", "cor35"};
    case DomainKind::DiskPlusPoints: return {"energy"};
  }
  return {};
}

inline void check_theorem(const std::string& t, const Domain& E) {
  const bool disk = E.kind == DomainKind::UnitDisk, seg = E.kind == DomainKind::Segment;
  if (t == "et31" || t == "thm31" || t == "cor32") {
    if (!disk) throw UsageError(t + " requires --domain disk");
  } else if (t == "thm34" || t == "cor35") {
    if (!seg) throw UsageError(t + " requires a segment domain");
  } else if (t == "cor36") {
    if (!seg || E.a != -2.0) throw UsageError("cor36 requires --domain segment:a=-2,b=2");
  } else if (t != "energy" && t != "growth") {
    throw UsageError("unknown theorem '" + t + "'");
  }
}

inline TestFunction default_phi(const Domain& E) {
  if (E.kind != DomainKind::Segment) return cor32_function();
  if (E.a == -2.0) return cor36_function();
  return cor35_function(E.a, E.b);
}

inline DiscrepancyReport theorem_report(const std::string& t, const FamilyMember& m, const RootSet& rs, const Domain& E,
                                        const RunConfig& c) {
  const int n = m.poly.degree();
  auto phi = [&]() { return c.phi.empty() ? default_phi(E) : builtin_test_function(c.phi, n); };
  if (t == "et31") return et31_report(m.poly, rs, c.bins);
  if (t == "thm31") return thm31_report(m.poly, rs, phi());
  if (t == "thm34") return thm34_report(m.poly, rs, phi(), E);
  if (t == "energy") return energy_report(m.poly, rs, phi(), E, c.r);
  if (t == "cor32") return cor32_report(m.poly, rs);
  if (t == "cor35") return cor35_report(m.poly, rs, E);
  return cor36_report(m.poly, rs);
}

inline RootOptions root_options(const RunConfig& c) {
  RootOptions o;
  o.seed = c.seed;
  o.target_radius = c.target_radius;
  o.max_sweeps = c.max_sweeps;
  return o;
}

inline std::string sanitize(const std::string& id) {
  std::string s;
  for (char ch : id) s += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.' ? ch : '_';
  return s;
}

inline std::ofstream open_for_write(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + p.string() + "'");
  return f;
}

inline void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw UsageError("cannot create plot-data directory '" + dir.string() + "'");
}

}  // namespace detail

/// Root scatter of one member.
struct RootSeries {
  std::string id;
  std::vector<Complex> roots;
};

/// Writes <dir>/<theorem>.csv with columns n,lhs,rhs, one file per theorem
/// in first-seen order. Rows whose threshold is not met carry rhs = nan.
inline std::vector<std::filesystem::path> emit_plot_data(const std::vector<DiscrepancyReport>& reports,
                                                         const std::filesystem::path& dir) {
  if (reports.empty()) throw UsageError("no reports to plot");
  detail::prepare_dir(dir);
  std::vector<std::string> tags;
  for (const auto& r : reports) {
    const std::string t = tag_name(r.tag);
    if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& t : tags) {
    files.push_back(dir / (t + ".csv"));
    std::ofstream f = detail::open_for_write(files.back());
    f << "n,lhs,rhs\n";
    for (const auto& r : reports) {
      if (tag_name(r.tag) == t) f << r.n << ',' << num(r.lhs) << ',' << num(r.rhs) << '\n';
    }
    if (!f) throw UsageError("cannot write '" + files.back().string() + "'");
  }
  return files;
}

/// Writes <dir>/roots_<id>.csv with columns re,im per member.
inline std::vector<std::filesystem::path> emit_root_scatter(const std::vector<RootSeries>& series,
                                                            const std::filesystem::path& dir) {
  if (series.empty()) throw UsageError("no roots to plot");
  detail::prepare_dir(dir);
  std::vector<std::filesystem::path> files;
  for (const auto& s : series) {
    files.push_back(dir / ("roots_" + detail::sanitize(s.id) + ".csv"));
    std::ofstream f = detail::open_for_write(files.back());
    f << "re,im\n";
    for (const Complex& z : s.roots) f << num(z.real()) << ',' << num(z.imag()) << '\n';
    if (!f) throw UsageError("cannot write '" + files.back().string() + "'");
  }
  return files;
}

inline const char* report_header = "theorem,n,lhs,lhs_unc,rhs,pass,id,domain,test_function,log_measure,r,note";

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& err) : c_(c), err_(err) {}

  int run(std::ostream& out) {
    const detail::Selection sel = detail::select(c_);
    const Domain E = parse_domain(c_.domain);
    std::vector<std::string> theorems;
    if (c_.command == Command::Verify) {
      if (c_.theorem.empty()) throw UsageError("verify requires --theorem");
      detail::check_theorem(c_.theorem, E);
      theorems = {c_.theorem};
    } else if (c_.command == Command::Sweep) {
      theorems = detail::sweep_theorems(E);
    }
    if (!c_.phi.empty()) builtin_test_function(c_.phi, 1);
    if (c_.r && !(*c_.r > 0.0)) throw UsageError("--r must be positive");
    if (c_.bins < 1) throw UsageError("--bins must be positive");

    const std::vector<FamilyMember> members = family_members(sel.spec, sel.n_min, sel.n_max);
    if (members.empty()) {
      throw UsageError("no family members with degree in [" + std::to_string(sel.n_min) + ", " +
                       std::to_string(sel.n_max) + "]");
    }
    std::ostringstream body;
    const bool growth = c_.command == Command::Growth || (c_.command == Command::Verify && c_.theorem == "growth");
    if (growth) {
      growth_output(body, sel, members, E);
    } else {
      switch (c_.command) {
        case Command::Roots: roots_output(body, members); break;
        case Command::Measure: measure_output(body, members, E); break;
        case Command::Stats: stats_output(body, members); break;
        default: reports_output(body, members, E, theorems);
      }
    }
    if (c_.output.empty()) {
      out << body.str();
    } else {
      std::ofstream f = detail::open_for_write(c_.output);
      f << body.str();
      if (!f) throw UsageError("cannot write '" + c_.output + "'");
    }
    if (numerical_failures_ > 0) return numerical_failure;
    return any_fail_ ? report_failure : ok;
  }

 private:
  Format format(Format fallback) const { return c_.format.value_or(fallback); }

  /// Root finding with numerical failures recorded against the member id.
  std::optional<RootSet> roots_of(const FamilyMember& m, bool allow_multiple) {
    try {
      const RootOptions o = detail::root_options(c_);
      return allow_multiple ? find_roots_with_multiplicity(m.poly, o) : find_roots(m.poly, o);
    } catch (const NumericalError& e) {
      fail_numerically(m.id, e);
      return std::nullopt;
    }
  }

  void fail_numerically(const std::string& id, const NumericalError& e) {
    ++numerical_failures_;
    err_ << "numerical failure in " << id << ": " << e.what() << '\n';
  }

  template <class F>
  void guarded(const FamilyMember& m, F&& f) {
    try {
      f();
    } catch (const NumericalError& e) {
      fail_numerically(m.id, e);
    } catch (const PreconditionError& e) {
      throw PreconditionError(m.id + ": " + e.what());
    }
  }

  void roots_output(std::ostream& o, const std::vector<FamilyMember>& members) {
    const Format f = format(Format::Text);
    nlohmann::json arr = nlohmann::json::array();
    std::vector<RootSeries> scatter;
    if (f == Format::Csv) o << "id,re,im,radius\n";
    for (const auto& m : members) {
      guarded(m, [&] {
        const auto rs = roots_of(m, true);
        if (!rs) return;
        scatter.push_back({m.id, rs->roots});
        if (f == Format::Text && members.size() > 1) o << "# " << m.id << '\n';
        nlohmann::json jr = nlohmann::json::array();
        for (std::size_t k = 0; k < rs->roots.size(); ++k) {
          const Complex z = rs->roots[k];
          const double rad = rs->radii[k];
          if (f == Format::Text) o << num(z.real()) << ' ' << num(z.imag()) << ' ' << num(rad) << '\n';
          if (f == Format::Csv) o << csv_field(m.id) << ',' << num(z.real()) << ',' << num(z.imag()) << ',' << num(rad) << '\n';
          jr.push_back({{"re", jnum(z.real())}, {"im", jnum(z.imag())}, {"radius", jnum(rad)}});
        }
        arr.push_back({{"id", m.id}, {"degree", m.poly.degree()}, {"roots", jr}});
      });
    }
    if (f == Format::Json) o << document("roots", {{"members", arr}});
    if (!c_.plot_data.empty()) emit_root_scatter(scatter, c_.plot_data);
  }

  void measure_output(std::ostream& o, const std::vector<FamilyMember>& members, const Domain& E) {
    const Format f = format(Format::Json);
    nlohmann::json arr = nlohmann::json::array();
    if (f != Format::Json) {
      o << "id,n,domain,mahler,generalized,tilde,height,sup_norm,gap,log_mahler,log_generalized,log_tilde,log_sup_norm\n";
    }
    for (const auto& m : members) {
      guarded(m, [&] {
        const auto rs = roots_of(m, true);
        if (!rs) return;
        const MeasureReport r = measure(m.poly, *rs, E);
        if (f != Format::Json) {
          o << csv_field(m.id) << ',' << r.degree << ',' << csv_field(describe(E)) << ',' << num(r.mahler()) << ','
            << num(r.generalized()) << ',' << num(r.tilde()) << ',' << num(r.height) << ',' << num(r.sup.value()) << ','
            << num(r.sup.gap()) << ',' << num(r.log_mahler) << ',' << num(r.log_generalized) << ',' << num(r.log_tilde)
            << ',' << num(r.sup.log_value) << '\n';
          return;
        }
        nlohmann::json check = {{"performed", r.tilde_check.performed},
                                {"log_value", jnum(r.tilde_check.log_value)},
                                {"difference", jnum(r.tilde_check.difference)}};
        arr.push_back({{"id", m.id},
                       {"degree", r.degree},
                       {"domain", describe(E)},
                       {"mahler", jnum(r.mahler())},
                       {"generalized", jnum(r.generalized())},
                       {"tilde", jnum(r.tilde())},
                       {"height", jnum(r.height)},
                       {"sup_norm", jnum(r.sup.value())},
                       {"gap", jnum(r.sup.gap())},
                       {"log_mahler", jnum(r.log_mahler)},
                       {"log_generalized", jnum(r.log_generalized)},
                       {"log_tilde", jnum(r.log_tilde)},
                       {"log_sup_norm", jnum(r.sup.log_value)},
                       {"log_sup_upper", jnum(r.sup.log_upper)},
                       {"omega_roots", r.omega_roots},
                       {"tilde_check", check},
                       {"notes", r.notes}});
      });
    }
    if (f == Format::Json) o << document("measure", {{"reports", arr}});
  }

  void stats_output(std::ostream& o, const std::vector<FamilyMember>& members) {
    const Format f = format(Format::Csv);
    nlohmann::json arr = nlohmann::json::array();
    std::vector<RootSeries> scatter;
    if (f != Format::Json) {
      o << "id,n";
      for (int k = 1; k <= 8; ++k) o << ",m" << k << "_re,m" << k << "_im";
      o << ",boundary_roots,sector_counts\n";
    }
    for (const auto& m : members) {
      guarded(m, [&] {
        const auto rs = roots_of(m, true);
        if (!rs) return;
        scatter.push_back({m.id, rs->roots});
        const ZeroStats s = zero_stats(*rs, c_.bins);
        std::string counts;
        for (std::size_t j = 0; j < s.sector_counts.size(); ++j) counts += (j ? ";" : "") + std::to_string(s.sector_counts[j]);
        if (f != Format::Json) {
          o << csv_field(m.id) << ',' << s.n;
          for (int k = 1; k <= 8; ++k) o << ',' << num(s.moments[k].real()) << ',' << num(s.moments[k].imag());
          o << ',' << s.boundary_roots << ',' << counts << '\n';
          return;
        }
        nlohmann::json mom = nlohmann::json::array();
        for (int k = 1; k <= 8; ++k) mom.push_back({jnum(s.moments[k].real()), jnum(s.moments[k].imag())});
        arr.push_back({{"id", m.id},
                       {"n", s.n},
                       {"moments", mom},
                       {"boundary_roots", s.boundary_roots},
                       {"sector_counts", s.sector_counts}});
      });
    }
    if (f == Format::Json) o << document("stats", {{"members", arr}});
    if (!c_.plot_data.empty()) emit_root_scatter(scatter, c_.plot_data);
  }

  void reports_output(std::ostream& o, const std::vector<FamilyMember>& members, const Domain& E,
                      const std::vector<std::string>& theorems) {
    std::vector<std::pair<std::string, DiscrepancyReport>> rows;
    for (const auto& m : members) {
      guarded(m, [&] {
        const auto rs = roots_of(m, false);
        if (!rs) return;
        for (const auto& t : theorems) {
          DiscrepancyReport r = detail::theorem_report(t, m, *rs, E, c_);
          if (c_.corrupt_rhs && r.threshold_met) {
            r.rhs = -1.0;
            equidist::detail::decide(r);
          }
          if (r.threshold_met && !r.pass) any_fail_ = true;
          rows.emplace_back(m.id, std::move(r));
        }
      });
    }
    const Format f = format(Format::Csv);
    if (f == Format::Json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [id, r] : rows) {
        nlohmann::json pass = r.threshold_met ? nlohmann::json(r.pass) : nlohmann::json(nullptr);
        arr.push_back({{"theorem", tag_name(r.tag)},
                       {"n", r.n},
                       {"lhs", jnum(r.lhs)},
                       {"lhs_unc", jnum(r.lhs_uncertainty)},
                       {"rhs", jnum(r.rhs)},
                       {"pass", pass},
                       {"id", id},
                       {"domain", r.domain},
                       {"test_function", r.test_function},
                       {"log_measure", jnum(r.log_measure)},
                       {"r", jnum(r.r)},
                       {"note", r.note}});
      }
      o << document(c_.command == Command::Sweep ? "sweep" : "verify", {{"rows", arr}});
    } else {
      o << report_header << '\n';
      for (const auto& [id, r] : rows) {
        o << tag_name(r.tag) << ',' << r.n << ',' << num(r.lhs) << ',' << num(r.lhs_uncertainty) << ',' << num(r.rhs)
          << ',' << pass_text(r) << ',' << csv_field(id) << ',' << csv_field(r.domain) << ','
          << csv_field(r.test_function) << ',' << num(r.log_measure) << ',' << num(r.r) << ',' << csv_field(r.note)
          << '\n';
      }
    }
    if (!c_.plot_data.empty()) {
      std::vector<DiscrepancyReport> reps;
      for (const auto& row : rows) reps.push_back(row.second);
      emit_plot_data(reps, c_.plot_data);
    }
  }

  void growth_output(std::ostream& o, const detail::Selection& sel, const std::vector<FamilyMember>& members,
                     const Domain& E) {
    GrowthTable table;
    for (const auto& m : members) {
      guarded(m, [&] {
        FamilySpec one = sel.spec;
        one.parameter = m.parameter;
        const GrowthTable t = growth_report(one, E, sel.n_min, sel.n_max);
        table.rows.insert(table.rows.end(), t.rows.begin(), t.rows.end());
        table.skipped.insert(table.skipped.end(), t.skipped.begin(), t.skipped.end());
      });
    }
    for (const auto& id : table.skipped) err_ << "skipped " << id << ": degree < 2 or multiple zeros\n";
    if (format(Format::Csv) == Format::Json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : table.rows) {
        arr.push_back({{"id", r.id}, {"n", r.n}, {"log_sup", jnum(r.log_sup)}, {"log_upper", jnum(r.log_upper)},
                       {"ratio", jnum(r.ratio)}});
      }
      o << document("growth", {{"rows", arr}, {"skipped", table.skipped}, {"max_ratio", jnum(table.max_ratio())}});
      return;
    }
    o << "id,n,log_sup,log_upper,ratio\n";
    for (const auto& r : table.rows) {
      o << csv_field(r.id) << ',' << r.n << ',' << num(r.log_sup) << ',' << num(r.log_upper) << ',' << num(r.ratio) << '\n';
    }
  }

  static std::string document(const std::string& command, nlohmann::json body) {
    body["schema_version"] = schema_version;
    body["command"] = command;
    return body.dump(2) + "\n";
  }

  const RunConfig& c_;
  std::ostream& err_;
  int numerical_failures_ = 0;
  bool any_fail_ = false;
};

/// Runs one command and maps errors to exit statuses: 1 for usage, parse
/// and precondition errors, 2 when a report fails, 3 on numerical failure.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Runner runner(config, err);
    return runner.run(out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
  return usage_failure;
}

}  // namespace equidist::cli
