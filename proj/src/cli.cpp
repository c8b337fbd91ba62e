#include "segre/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "segre/asympt.hpp"
#include "segre/eddeg.hpp"
#include "segre/exactcore.hpp"
#include "segre/hyperdet.hpp"
#include "segre/polar.hpp"

namespace segre::cli {

namespace {

// ---------------------------------------------------------------------------
// Output records

struct Exact {
  std::string digits;
};

using Value = std::variant<Exact, double, std::string, bool, long>;
using Field = std::pair<std::string, Value>;

struct Record {
  std::vector<Field> parameters;
  std::vector<Field> results;
  std::optional<std::string> note;
  std::optional<double> elapsed_ms;
};

struct Output {
  std::string command;
  std::vector<Record> records;
};

enum class OutputFormat { Plain, Csv, Json };

Value exact(const Integer& v) { return Exact{v.get_str()}; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string value_text(const Value& v) {
  struct Visitor {
    std::string operator()(const Exact& e) const { return e.digits; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long l) const { return std::to_string(l); }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json value_json(const Value& v) {
  struct Visitor {
    nlohmann::ordered_json operator()(const Exact& e) const { return e.digits; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return format_double(d);
      return std::stod(format_double(d));
    }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(long l) const { return l; }
  };
  return std::visit(Visitor{}, v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> column_names(const Output& o, bool* has_note, bool* has_time) {
  std::vector<std::string> cols;
  *has_note = false;
  *has_time = false;
  auto add = [&](const std::string& c) {
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
  };
  for (const auto& r : o.records) {
    for (const auto& [k, v] : r.parameters) add(k);
    for (const auto& [k, v] : r.results) add(k);
    *has_note = *has_note || r.note.has_value();
    *has_time = *has_time || r.elapsed_ms.has_value();
  }
  return cols;
}

std::string cell(const Record& r, const std::string& col) {
  for (const auto* fields : {&r.parameters, &r.results})
    for (const auto& [k, v] : *fields)
      if (k == col) return value_text(v);
  return "";
}

void write_csv(const Output& o, std::ostream& os) {
  bool has_note = false, has_time = false;
  auto cols = column_names(o, &has_note, &has_time);
  if (has_note) cols.push_back("note");
  if (has_time) cols.push_back("elapsed_ms");
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_escape(cols[i]);
  os << '\n';
  for (const auto& r : o.records) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string text;
      if (cols[i] == "note" && has_note) text = r.note.value_or("");
      else if (cols[i] == "elapsed_ms" && has_time) text = r.elapsed_ms ? format_double(*r.elapsed_ms) : "";
      else text = cell(r, cols[i]);
      os << (i ? "," : "") << csv_escape(text);
    }
    os << '\n';
  }
}

void write_json(const Output& o, std::ostream& os) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : o.records) {
    nlohmann::ordered_json rec;
    rec["command"] = o.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = value_json(v);
    rec["parameters"] = params;
    if (r.results.size() == 1 && r.results.front().first == "result") {
      rec["result"] = value_json(r.results.front().second);
    } else {
      nlohmann::ordered_json res = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r.results) res[k] = value_json(v);
      rec["result"] = res;
    }
    if (r.note) rec["note"] = *r.note;
    if (r.elapsed_ms) rec["elapsed_ms"] = std::stod(format_double(*r.elapsed_ms));
    arr.push_back(std::move(rec));
  }
  os << arr.dump(2) << '\n';
}

void write_plain(const Output& o, std::ostream& os) {
  if (o.records.size() == 1 && o.records.front().results.size() == 1) {
    const auto& r = o.records.front();
    os << value_text(r.results.front().second) << '\n';
    if (r.note) os << "note: " << *r.note << '\n';
    if (r.elapsed_ms) os << "elapsed_ms: " << format_double(*r.elapsed_ms) << '\n';
    return;
  }
  bool has_note = false, has_time = false;
  auto cols = column_names(o, &has_note, &has_time);
  if (has_time) cols.push_back("elapsed_ms");
  std::vector<std::vector<std::string>> grid;
  for (const auto& r : o.records) {
    std::vector<std::string> row;
    for (const auto& c : cols)
      row.push_back(c == "elapsed_ms" && has_time ? (r.elapsed_ms ? format_double(*r.elapsed_ms) : "") : cell(r, c));
    grid.push_back(std::move(row));
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    width[i] = cols[i].size();
    for (const auto& row : grid) width[i] = std::max(width[i], row[i].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size(), ' ');
    }
    os << line << '\n';
  };
  emit(cols);
  for (const auto& row : grid) emit(row);
  for (const auto& r : o.records)
    if (r.note) os << "note: " << *r.note << '\n';
}

void write_output(const Output& o, OutputFormat fmt, std::ostream& os) {
  switch (fmt) {
    case OutputFormat::Plain: write_plain(o, os); break;
    case OutputFormat::Csv: write_csv(o, os); break;
    case OutputFormat::Json: write_json(o, os); break;
  }
}

// ---------------------------------------------------------------------------
// Execution context

struct Context {
  Budget budget;
  unsigned jobs = 1;
  bool timing = false;
};

/// Evaluates task(0..count-1) on up to `jobs` threads; results keep index order.
/// The first exception by index is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& task) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Record timed(const Context& ctx, const std::function<Record()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Record r = body();
  if (ctx.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string segre_name(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "xP" : "P") + std::to_string(dims[i]);
  return s;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s;
}

// Thrown for checks that failed inside `verify`.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Commands

Output cmd_hyperdet(const Context& ctx, const std::string& dims_text, std::optional<int> omega) {
  const Format f(parse_int_list(dims_text));
  Output o{"hyperdet", {}};
  o.records.push_back(timed(ctx, [&] {
    Record r;
    r.parameters.emplace_back("dims", dims_text);
    if (omega) {
      r.parameters.emplace_back("omega", static_cast<long>(*omega));
      r.results.emplace_back("result", exact(hyperdet::sv_hyperdet_degree(f, *omega, ctx.budget)));
    } else {
      r.results.emplace_back("result", exact(hyperdet::hyperdet_degree(f, ctx.budget)));
    }
    if ((!omega || *omega == 1) && !hyperdet::is_dual_nondefective(f))
      r.note = "dual defective: the dual variety is not a hypersurface (max n_j exceeds the sum of the others)";
    return r;
  }));
  return o;
}

Output cmd_eddeg(const Context& ctx, const std::string& dims_text, bool generic,
                 const std::optional<std::string>& weights_text) {
  std::vector<int> weights;
  if (weights_text) weights = parse_int_list(*weights_text);
  const Format f(parse_int_list(dims_text), weights);
  if (!generic && !f.unit_weights())
    throw UsageError("the Frobenius ED degree is only available for unit weights; use --generic");
  Output o{"eddeg", {}};
  o.records.push_back(timed(ctx, [&] {
    Record r;
    r.parameters.emplace_back("dims", dims_text);
    r.parameters.emplace_back("metric", std::string(generic ? "generic" : "frobenius"));
    if (weights_text) r.parameters.emplace_back("weights", *weights_text);
    r.results.emplace_back("result", exact(generic ? ed::generic_ed_degree(f) : ed::frobenius_ed_degree(f, ctx.budget)));
    return r;
  }));
  return o;
}

const std::vector<std::vector<int>>& table2_bases() {
  static const std::vector<std::vector<int>> bases{{1, 1}, {1, 2}, {2, 2}, {2, 3}};
  return bases;
}

Output cmd_table(const Context& ctx, const std::string& name) {
  Output o{"table", {}};
  if (name == "table2") {
    constexpr int kColumns = 6;
    const auto& bases = table2_bases();
    const auto cells = parallel_map<Integer>(bases.size() * kColumns, ctx.jobs, [&](std::size_t k) {
      std::vector<int> dims = bases[k / kColumns];
      dims.push_back(static_cast<int>(k % kColumns));
      return ed::frobenius_ed_degree(Format(dims), ctx.budget);
    });
    for (std::size_t b = 0; b < bases.size(); ++b) {
      Record r;
      r.parameters.emplace_back("X", segre_name(bases[b]));
      for (int m = 0; m < kColumns; ++m)
        r.results.emplace_back("m" + std::to_string(m), exact(cells[b * kColumns + static_cast<std::size_t>(m)]));
      o.records.push_back(std::move(r));
    }
  } else if (name == "stabilization") {
    const auto& bases = table2_bases();
    o.records = parallel_map<Record>(bases.size(), ctx.jobs, [&](std::size_t b) {
      return timed(ctx, [&] {
        const Format base(bases[b]);
        const long n = base.total();
        const auto rows = ed::stabilization_onset(base, n + 3, ctx.budget);
        std::vector<std::string> values;
        for (const auto& row : rows) values.push_back(row.ed_degree.get_str());
        Record r;
        r.parameters.emplace_back("X", segre_name(bases[b]));
        r.parameters.emplace_back("N", n);
        r.results.emplace_back("ed_degrees", join(values));
        r.results.emplace_back("stable_from", n);
        r.results.emplace_back("stable_value", exact(rows[static_cast<std::size_t>(n)].ed_degree));
        return r;
      });
    });
  } else if (name == "dual-example") {
    const auto x = polar::chern_data_projective_space_product(Format({1, 1}));
    o.records = parallel_map<Record>(6, ctx.jobs, [&](std::size_t n) {
      return timed(ctx, [&] {
        const int qn = static_cast<int>(n);
        const auto product = polar::chern_data_product(x, polar::chern_data_smooth_hypersurface(qn, 2));
        Record r;
        r.parameters.emplace_back("n", static_cast<long>(n));
        r.results.emplace_back("degree", exact(polar::dual_profile(product).deltas.front()));
        r.results.emplace_back("alpha_shortcut", exact(polar::delta0_product_with_hypersurface(x, qn, 2)));
        return r;
      });
    });
  } else {
    throw UsageError("unknown table '" + name + "' (expected table2, stabilization or dual-example)");
  }
  return o;
}

struct SuiteResult {
  Record record;
  std::vector<std::string> failures;
};

SuiteResult family(const std::string& suite, const std::string& name, long checked, std::vector<std::string> failures) {
  SuiteResult s;
  s.record.parameters.emplace_back("suite", suite);
  s.record.parameters.emplace_back("check", name);
  s.record.results.emplace_back("checked", checked);
  s.record.results.emplace_back("failures", static_cast<long>(failures.size()));
  s.failures = std::move(failures);
  return s;
}

std::vector<SuiteResult> suite_identities(const Context& ctx, int max_n) {
  std::vector<SuiteResult> out;
  {
    long checked = 0;
    std::vector<std::string> bad;
    for (int n = 0; n <= max_n; ++n)
      for (int m = 0; m <= n; ++m)
        for (int i = 0; i <= m; ++i, ++checked)
          if (!polar::identity_masterbinomial(n, m, i))
            bad.push_back("masterbinomial n=" + std::to_string(n) + " m=" + std::to_string(m) + " i=" + std::to_string(i));
    out.push_back(family("identities", "masterbinomial", checked, std::move(bad)));
  }
  {
    long checked = 0;
    std::vector<std::string> bad;
    for (int n = 0; n <= max_n; ++n)
      for (int m = 0; m <= n; ++m, ++checked)
        if (!polar::identity_f(n, m)) bad.push_back("f-identity n=" + std::to_string(n) + " m=" + std::to_string(m));
    out.push_back(family("identities", "f-identity+recurrence", checked, std::move(bad)));
  }
  {
    const auto rows = parallel_map<std::vector<std::string>>(static_cast<std::size_t>(max_n), ctx.jobs, [&](std::size_t k) {
      const int n = static_cast<int>(k) + 1;
      std::vector<std::string> bad;
      for (int j = 1; j <= n; ++j)
        if (!polar::identity_g(n, j)) bad.push_back("g-identity n=" + std::to_string(n) + " j=" + std::to_string(j));
      return bad;
    });
    std::vector<std::string> bad;
    for (const auto& r : rows) bad.insert(bad.end(), r.begin(), r.end());
    out.push_back(family("identities", "g-identity+recurrence", static_cast<long>(max_n) * (max_n + 1) / 2, std::move(bad)));
  }
  {
    const auto rep = polar::stabilization_ratio_check(max_n, max_n, 5);
    std::vector<std::string> bad;
    for (const auto& w : rep.failures)
      bad.push_back("alpha ratio m=" + std::to_string(w.m) + " n=" + std::to_string(w.n) + " d=" + std::to_string(w.d) +
                    " i=" + std::to_string(w.i) + ": " + w.lhs.get_str() + " != " + w.rhs.get_str());
    out.push_back(family("identities", "alpha-ratio", rep.checked, std::move(bad)));
  }
  return out;
}

std::vector<SuiteResult> suite_rw_constants(const Context& ctx, int max_d) {
  if (max_d < 3) throw UsageError("rw-constants needs --max >= 3");
  const auto reports = parallel_map<asympt::RwConstantsReport>(static_cast<std::size_t>(max_d - 2), ctx.jobs,
                                                               [&](std::size_t k) { return asympt::verify_rw_constants(static_cast<int>(k) + 3); });
  std::vector<SuiteResult> out;
  for (const auto& rep : reports) {
    auto s = family("rw-constants", "d=" + std::to_string(rep.d), rep.partials_checked + 5, rep.failures);
    s.record.results.emplace_back("q", rep.q.get_str());
    s.record.results.emplace_back("det_hessian", rep.hessian_det.get_str());
    s.record.results.emplace_back("L0", rep.l0.get_str());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SuiteResult> suite_stabilization(const Context& ctx, int max_total) {
  const auto bases = partition_formats(max_total);
  const auto msgs = parallel_map<std::string>(bases.size(), ctx.jobs, [&](std::size_t k) -> std::string {
    try {
      ed::stabilization_onset(bases[k], bases[k].total() + 3, ctx.budget);
      return "";
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
      return e.what();
    }
  });
  std::vector<std::string> bad;
  for (const auto& m : msgs)
    if (!m.empty()) bad.push_back(m);
  std::vector<SuiteResult> out;
  out.push_back(family("stabilization", "ed-frobenius-onset", static_cast<long>(bases.size()), std::move(bad)));

  // delta_0(X x Q_n) is constant for n >= dim X.
  long checked = 0;
  std::vector<std::string> dual_bad;
  for (const auto& f : partition_formats(std::min(max_total, 4))) {
    const auto x = polar::chern_data_projective_space_product(f);
    const Integer stable = polar::delta0_product_with_hypersurface(x, x.dim, 2);
    for (int n = x.dim + 1; n <= x.dim + 3; ++n, ++checked)
      if (polar::delta0_product_with_hypersurface(x, n, 2) != stable)
        dual_bad.push_back("delta0(" + segre_name(f.dims) + " x Q_" + std::to_string(n) + ") differs from n=dim X");
  }
  out.push_back(family("stabilization", "dual-degree-XxQn", checked, std::move(dual_bad)));
  return out;
}

std::vector<SuiteResult> suite_cross_oracle(const Context& ctx, int max_total) {
  std::vector<Format> formats = partition_formats(max_total);
  const auto msgs = parallel_map<std::string>(formats.size(), ctx.jobs, [&](std::size_t k) -> std::string {
    const Format& f = formats[k];
    const Integer gkz = hyperdet::hyperdet_degree(f, ctx.budget);
    const auto profile = polar::dual_profile(polar::chern_data_projective_space_product(f));
    const Integer& delta0 = profile.deltas.front();
    const bool nondefective = hyperdet::is_dual_nondefective(f);
    if (gkz != delta0)
      return "format " + f.to_string() + ": hyperdet degree " + gkz.get_str() + " != delta_0 " + delta0.get_str();
    if (nondefective != (delta0 != 0))
      return "format " + f.to_string() + ": defectiveness criterion disagrees with delta_0 = " + delta0.get_str();
    return "";
  });
  std::vector<std::string> bad;
  for (const auto& m : msgs)
    if (!m.empty()) bad.push_back(m);
  std::vector<SuiteResult> out;
  out.push_back(family("cross-oracle", "delta0-vs-hyperdet", static_cast<long>(formats.size()), std::move(bad)));
  return out;
}

int cmd_verify(const Context& ctx, const std::string& suite, std::optional<int> max, Output& o, std::ostream& err) {
  std::vector<SuiteResult> results;
  if (suite == "identities") results = suite_identities(ctx, max.value_or(30));
  else if (suite == "rw-constants") results = suite_rw_constants(ctx, max.value_or(10));
  else if (suite == "stabilization") results = suite_stabilization(ctx, max.value_or(7));
  else if (suite == "cross-oracle") results = suite_cross_oracle(ctx, max.value_or(7));
  else throw UsageError("unknown suite '" + suite + "' (expected identities, rw-constants, stabilization or cross-oracle)");

  o.command = "verify";
  bool ok = true;
  for (auto& r : results) {
    for (const auto& f : r.failures) err << "FAILED " << f << '\n';
    ok = ok && r.failures.empty();
    o.records.push_back(std::move(r.record));
  }
  return ok ? kOk : kVerificationFailed;
}

std::vector<int> parse_grid(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return parse_int_list(text);
  const auto lo = parse_int_list(text.substr(0, dots));
  const auto hi = parse_int_list(text.substr(dots + 2));
  if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw UsageError("bad range '" + text + "'");
  std::vector<int> grid;
  for (int v = lo[0]; v <= hi[0]; ++v) grid.push_back(v);
  return grid;
}

Output cmd_asympt(const Context& ctx, const std::string& formula, int d, const std::optional<std::string>& grid_text,
                  bool compare, std::optional<int> omega) {
  Output o{"asympt", {}};
  if (formula == "hyperdet" || formula == "ed" || formula == "sv-hyperdet") {
    if (!grid_text) throw UsageError("asympt " + formula + " needs D and N (or a range A..B)");
    if (d < 3) throw UsageError("formula requires d >= 3");
    const auto grid = parse_grid(*grid_text);
    const int w = omega.value_or(1);
    const auto kind = *asympt::parse_formula(formula);
    if (!compare) {
      for (int n : grid) {
        Record r;
        r.parameters.emplace_back("formula", formula);
        r.parameters.emplace_back("d", static_cast<long>(d));
        r.parameters.emplace_back("n", static_cast<long>(n));
        if (kind == asympt::Formula::SvHyperdet) r.parameters.emplace_back("omega", static_cast<long>(w));
        double est = kind == asympt::Formula::Hyperdet    ? asympt::hyperdet_asymptotic(d, n)
                     : kind == asympt::Formula::EdFrobenius ? asympt::ed_asymptotic(d, n)
                                                            : asympt::sv_hyperdet_asymptotic(d, n, w);
        r.results.emplace_back("estimate", est);
        o.records.push_back(std::move(r));
      }
      return o;
    }
    const auto points = parallel_map<asympt::SweepPoint>(grid.size(), ctx.jobs, [&](std::size_t k) {
      return asympt::convergence_sweep(kind, d, {grid[k]}, w, ctx.budget).points.front();
    });
    for (std::size_t k = 0; k < points.size(); ++k) {
      Record r;
      r.parameters.emplace_back("formula", formula);
      r.parameters.emplace_back("d", static_cast<long>(d));
      r.parameters.emplace_back("n", static_cast<long>(points[k].n));
      if (kind == asympt::Formula::SvHyperdet) r.parameters.emplace_back("omega", static_cast<long>(w));
      r.results.emplace_back("exact", exact(points[k].exact));
      r.results.emplace_back("estimate", points[k].estimate);
      r.results.emplace_back("rel_error", points[k].rel_error);
      o.records.push_back(std::move(r));
    }
    return o;
  }
  if (formula == "binary") {
    const auto grid = grid_text ? parse_grid(*grid_text) : std::vector<int>{d};
    for (int dd : grid) {
      if (dd < 2) throw UsageError("binary formulas need d >= 2");
      const auto est = asympt::binary_asymptotics(dd);
      const double e2 = std::exp(2.0);
      Record r;
      r.parameters.emplace_back("formula", formula);
      r.parameters.emplace_back("d", static_cast<long>(dd));
      r.results.emplace_back("hyperdet", est.hyperdet);
      r.results.emplace_back("ed_frobenius", est.ed_frobenius);
      r.results.emplace_back("ed_generic", est.ed_generic);
      r.results.emplace_back("ratio_hyperdet_ed_frobenius", (dd + 3.0) / e2);
      r.results.emplace_back("ratio_hyperdet_ed_generic",
                             (dd + 3.0) / (e2 * (std::ldexp(1.0, dd + 1) * std::numbers::e - 1.0)));
      if (compare) {
        const Integer h = hyperdet::binary_hyperdet_degree(dd);
        const Integer f = factorial(dd);
        const Integer g = ed::binary_generic_ed_degree(dd);
        r.results.emplace_back("exact_hyperdet", exact(h));
        r.results.emplace_back("exact_ed_frobenius", exact(f));
        r.results.emplace_back("exact_ed_generic", exact(g));
        r.results.emplace_back("rel_error_hyperdet", asympt::relative_error(h, std::log(est.hyperdet)));
        r.results.emplace_back("rel_error_ed_frobenius", asympt::relative_error(f, std::log(est.ed_frobenius)));
        r.results.emplace_back("rel_error_ed_generic", asympt::relative_error(g, std::log(est.ed_generic)));
      }
      o.records.push_back(std::move(r));
    }
    return o;
  }
  if (formula == "discriminant") {
    // asympt discriminant N OMEGA: the first positional is n here.
    if (!grid_text) throw UsageError("asympt discriminant needs N and OMEGA");
    const auto omegas = parse_grid(*grid_text);
    for (int w : omegas) {
      const auto dr = asympt::discriminant_ratios(d, w);
      Record r;
      r.parameters.emplace_back("formula", formula);
      r.parameters.emplace_back("n", static_cast<long>(d));
      r.parameters.emplace_back("omega", static_cast<long>(w));
      r.results.emplace_back("discriminant_degree", exact(dr.discriminant_degree));
      r.results.emplace_back("ed_frobenius", exact(dr.ed_frobenius));
      r.results.emplace_back("ed_generic", exact(dr.ed_generic));
      r.results.emplace_back("fixed_omega_ratio", dr.fixed_omega_ratio);
      r.results.emplace_back("fixed_n_ratio", dr.fixed_n_ratio);
      r.results.emplace_back("gen_ratio", dr.gen_ratio);
      o.records.push_back(std::move(r));
    }
    return o;
  }
  throw UsageError("unknown formula '" + formula + "' (expected hyperdet, ed, sv-hyperdet, binary or discriminant)");
}

unsigned default_jobs() {
  if (const char* env = std::getenv("SEGRE_DEGREES_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact degrees and ED degrees of Segre products and their duals", "segre-degrees"};
  app.require_subcommand(1);

  std::string format_name = "plain";
  std::optional<std::string> out_path;
  unsigned jobs = default_jobs();
  std::uint64_t cap_bytes = Budget::kDefaultBytes;
  bool timing = false;
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"plain", "csv", "json"}));
  app.add_option("--out", out_path, "Write records to PATH instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads for table fills (default: $SEGRE_DEGREES_JOBS or 1)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--cap-bytes", cap_bytes, "Memory cap for dense coefficient boxes")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Add elapsed_ms to every record");

  std::string dims, name, suite, formula;
  std::optional<int> omega, max;
  std::optional<std::string> weights, grid;
  bool generic = false, compare = false;
  int d = 0;

  auto* hyper = app.add_subcommand("hyperdet", "Degree of the hyperdeterminant of format DIMS");
  hyper->add_option("dims", dims, "Comma-separated n_1,...,n_d")->required();
  hyper->add_option("--omega", omega, "Equal Veronese weight")->check(CLI::PositiveNumber);

  auto* eddeg = app.add_subcommand("eddeg", "ED degree of P^{n_1} x ... x P^{n_d}");
  eddeg->add_option("dims", dims, "Comma-separated n_1,...,n_d")->required();
  eddeg->add_flag("--generic", generic, "Generic metric instead of Frobenius");
  eddeg->add_option("--weights", weights, "Comma-separated Veronese weights (generic metric)");

  auto* table = app.add_subcommand("table", "Emit a golden table");
  table->add_option("name", name, "table2 | stabilization | dual-example")->required();

  auto* verify = app.add_subcommand("verify", "Run an exact verification suite");
  verify->add_option("suite", suite, "identities | rw-constants | stabilization | cross-oracle")->required();
  verify->add_option("--max", max, "Upper bound of the parameter sweep")->check(CLI::NonNegativeNumber);

  auto* asym = app.add_subcommand("asympt", "Evaluate an asymptotic formula");
  asym->add_option("formula", formula, "hyperdet | ed | sv-hyperdet | binary | discriminant")->required();
  asym->add_option("d", d, "Factor count (n for discriminant)")->required();
  asym->add_option("n", grid, "n, a list a,b,c or a range A..B (omega for discriminant)");
  asym->add_flag("--compare", compare, "Also compute the exact value and relative error");
  asym->add_option("--omega", omega, "Veronese weight for sv-hyperdet")->check(CLI::PositiveNumber);

  for (auto* sub : {hyper, eddeg, table, verify, asym}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Context ctx;
  ctx.budget.max_bytes = cap_bytes;
  ctx.jobs = jobs;
  ctx.timing = timing;
  const OutputFormat fmt = format_name == "csv" ? OutputFormat::Csv : format_name == "json" ? OutputFormat::Json : OutputFormat::Plain;

  Output o;
  int code = kOk;
  try {
    if (hyper->parsed()) o = cmd_hyperdet(ctx, dims, omega);
    else if (eddeg->parsed()) o = cmd_eddeg(ctx, dims, generic, weights);
    else if (table->parsed()) o = cmd_table(ctx, name);
    else if (verify->parsed()) code = cmd_verify(ctx, suite, max, o, err);
    else if (asym->parsed()) o = cmd_asympt(ctx, formula, d, grid, compare, omega);
  } catch (const CapExceeded& e) {
    err << "error: resource cap exceeded (" << e.cap() << "): " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }

  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *out_path << " for writing\n";
      return kUsage;
    }
    write_output(o, fmt, file);
  } else {
    write_output(o, fmt, out);
  }
  return code;
}

}  // namespace segre::cli
