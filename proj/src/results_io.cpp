#include "flmm/results_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flmm {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Leading `method,beta,` columns for multi-item sweeps.
class CsvWriter {
 public:
  CsvWriter(bool prefixed, std::string_view header) : prefixed_(prefixed) {
    if (prefixed_) os_ << "method,beta,";
    os_ << header << '\n';
  }

  std::ostream& row(Method m, double beta) {
    if (prefixed_) os_ << method_name(m) << ',' << format_real(beta) << ',';
    return os_;
  }

  std::string str() const { return os_.str(); }

 private:
  bool prefixed_;
  std::ostringstream os_;
};

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json tagged(std::string_view kind) { return json{{"schema", kSchemaVersion}, {"kind", kind}}; }

std::string_view verdict_name(DynamicVerdict v) {
  switch (v) {
    case DynamicVerdict::Decay: return "decay";
    case DynamicVerdict::Growth: return "growth";
    case DynamicVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string member_cell(const MembershipResult& m) {
  if (m.indeterminate) return "NA";
  return m.member ? "1" : "0";
}

}  // namespace

std::string render_csv(const std::vector<ConvergenceTable>& tables) {
  CsvWriter w(tables.size() != 1, "M,h,max_error,order");
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& r = t.rows[i];
      auto& os = w.row(t.method, t.beta);
      os << r.M << ',' << format_real(r.h) << ',' << format_real(r.max_error) << ',';
      // First row: empty. Rounding-level errors: NA.
      if (r.order) os << format_real(*r.order);
      else if (i > 0) os << "NA";
      os << '\n';
    }
  }
  return w.str();
}

std::string render_csv(const std::vector<BoundaryCurve>& curves) {
  CsvWriter w(curves.size() != 1, "theta,re,im");
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      w.row(c.method, c.beta) << format_real(s.theta) << ',' << format_real(s.value.real()) << ','
                              << format_real(s.value.imag()) << '\n';
    }
  }
  return w.str();
}

std::string render_csv(const std::vector<GridResult>& grids) {
  const bool with_oracle = !grids.empty() && !grids.front().oracle.empty();
  CsvWriter w(grids.size() != 1, with_oracle ? "re_zeta,im_zeta,member,dynamic" : "re_zeta,im_zeta,member");
  for (const auto& g : grids) {
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
      const auto& c = g.cells[i];
      auto& os = w.row(g.method, g.beta);
      os << format_real(c.zeta.real()) << ',' << format_real(c.zeta.imag()) << ',' << member_cell(c.membership);
      if (with_oracle) os << ',' << (i < g.oracle.size() ? verdict_name(g.oracle[i]) : "");
      os << '\n';
    }
  }
  return w.str();
}

std::string render_csv(const std::vector<MinusOneComparison>& rows) {
  std::ostringstream os;
  os << "beta,fbdf2,nflmm2,fam1,ft2,ordered\n";
  for (const auto& r : rows) {
    os << format_real(r.beta) << ',' << format_real(r.fbdf2) << ',' << format_real(r.nflmm2) << ','
       << format_real(r.fam1) << ',' << format_real(r.ft2) << ',' << (r.degenerate ? "NA" : (r.ordered ? "1" : "0"))
       << '\n';
  }
  return os.str();
}

std::string render_csv(const std::vector<WeightsResult>& weights) {
  CsvWriter w(weights.size() != 1, "k,A,Q");
  for (const auto& r : weights) {
    const auto& a = r.weights.y_side;
    const auto& q = r.weights.f_side;
    for (std::size_t k = 0; k < a.size(); ++k) {
      auto& os = w.row(r.method, r.beta);
      os << k << ',' << format_real(a[k]) << ',';
      if (k < q.size()) os << format_real(q[k]);
      os << '\n';
    }
  }
  return w.str();
}

std::string render_csv(const std::vector<SolutionTrace<double>>& traces) {
  CsvWriter w(traces.size() != 1, "t,y");
  for (const auto& tr : traces) {
    for (std::size_t n = 0; n <= tr.grid.steps; ++n) {
      w.row(tr.method, tr.beta) << format_real(tr.grid.t(n)) << ',' << format_real(tr.y[static_cast<Eigen::Index>(n)])
                                << '\n';
    }
  }
  return w.str();
}

json to_json(const std::vector<ConvergenceTable>& tables) {
  json doc = tagged("convergence");
  json arr = json::array();
  for (const auto& t : tables) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"M", r.M}, {"h", r.h}, {"max_error", r.max_error},
                      {"order", r.order ? json(*r.order) : json(nullptr)}});
    }
    json entry{{"method", method_name(t.method)}, {"beta", t.beta}, {"problem", t.problem}, {"rows", rows}};
    entry["failure"] = t.failure ? json(*t.failure) : json(nullptr);
    arr.push_back(std::move(entry));
  }
  doc["tables"] = std::move(arr);
  return doc;
}

json to_json(const std::vector<BoundaryCurve>& curves) {
  json doc = tagged("stability-boundary");
  json arr = json::array();
  for (const auto& c : curves) {
    json theta = json::array(), re = json::array(), im = json::array();
    for (const auto& s : c.samples) {
      theta.push_back(s.theta);
      re.push_back(real_or_null(s.value.real()));
      im.push_back(real_or_null(s.value.imag()));
    }
    arr.push_back({{"method", method_name(c.method)}, {"beta", c.beta}, {"excluded", c.excluded},
                   {"theta", theta}, {"re", re}, {"im", im}});
  }
  doc["curves"] = std::move(arr);
  return doc;
}

json to_json(const std::vector<GridResult>& grids) {
  json doc = tagged("stability-grid");
  json arr = json::array();
  for (const auto& g : grids) {
    json cells = json::array();
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
      const auto& c = g.cells[i];
      json cell{{"re_zeta", c.zeta.real()}, {"im_zeta", c.zeta.imag()}, {"winding", c.membership.winding}};
      cell["member"] = c.membership.indeterminate ? json(nullptr) : json(c.membership.member);
      if (i < g.oracle.size()) cell["dynamic"] = verdict_name(g.oracle[i]);
      cells.push_back(std::move(cell));
    }
    arr.push_back({{"method", method_name(g.method)}, {"beta", g.beta}, {"cells", cells}});
  }
  doc["grids"] = std::move(arr);
  return doc;
}

json to_json(const std::vector<MinusOneComparison>& rows) {
  json doc = tagged("stability-compare");
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"beta", r.beta},
             {"fbdf2", real_or_null(r.fbdf2)},
             {"nflmm2", real_or_null(r.nflmm2)},
             {"fam1", real_or_null(r.fam1)},
             {"ft2", real_or_null(r.ft2)},
             {"degenerate", r.degenerate}};
    row["ordered"] = r.degenerate ? json(nullptr) : json(r.ordered);
    arr.push_back(std::move(row));
  }
  doc["rows"] = std::move(arr);
  return doc;
}

json to_json(const std::vector<WeightsResult>& weights) {
  json doc = tagged("weights");
  json arr = json::array();
  for (const auto& r : weights) {
    const auto& a = r.weights.y_side.coeffs();
    const auto& q = r.weights.f_side.coeffs();
    arr.push_back({{"method", method_name(r.method)},
                   {"beta", r.beta},
                   {"A", std::vector<double>(a.data(), a.data() + a.size())},
                   {"Q", std::vector<double>(q.data(), q.data() + q.size())}});
  }
  doc["weights"] = std::move(arr);
  return doc;
}

json trace_to_json(const SolutionTrace<double>& tr) {
  json t = json::array(), y = json::array();
  for (std::size_t n = 0; n <= tr.grid.steps; ++n) {
    t.push_back(tr.grid.t(n));
    y.push_back(real_or_null(tr.y[static_cast<Eigen::Index>(n)]));
  }
  json doc{{"schema", kSchemaVersion},
           {"meta",
            {{"method", method_name(tr.method)}, {"beta", tr.beta}, {"t0", tr.grid.t0}, {"h", tr.grid.h},
             {"N", tr.grid.steps}}},
           {"t", t},
           {"y", y}};
  doc["newton_iters"] = tr.newton_iters;
  return doc;
}

json to_json(const std::vector<SolutionTrace<double>>& traces) {
  if (traces.size() == 1) return trace_to_json(traces.front());
  json doc = tagged("solve");
  json arr = json::array();
  for (const auto& tr : traces) arr.push_back(trace_to_json(tr));
  doc["traces"] = std::move(arr);
  return doc;
}

SolutionTrace<double> trace_from_json(const json& j) {
  if (j.value("schema", std::string{}) != kSchemaVersion) {
    throw std::invalid_argument("trace document lacks schema tag " + std::string(kSchemaVersion));
  }
  const auto& meta = j.at("meta");
  SolutionTrace<double> tr;
  tr.method = parse_method(meta.at("method").get<std::string>());
  tr.beta = meta.at("beta").get<double>();
  tr.grid = Grid{meta.at("t0").get<double>(), meta.at("h").get<double>(), meta.at("N").get<std::size_t>()};
  const auto ys = j.at("y").get<std::vector<double>>();
  if (ys.size() != tr.grid.steps + 1) throw std::invalid_argument("trace y has wrong length");
  tr.y = Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  if (j.contains("newton_iters")) tr.newton_iters = j.at("newton_iters").get<std::vector<int>>();
  return tr;
}

SolutionTrace<double> load_trace_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return trace_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed trace '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& payload) {
  const auto parent = path.parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("cannot write '" + path.string() + "': directory '" + parent.string() + "' does not exist");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << payload;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace flmm
