#include "graphdm/io.hpp"

#include <fstream>
#include <sstream>

namespace graphdm {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line,
                             const std::string& what) {
  fail(ErrorKind::ParseError,
       source + ":" + std::to_string(line) + ": " + what);
}

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::ParseError, "complex entries must be [re, im] pairs");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

Graph parse_graph_text(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;
  int p = 0, q = 0;
  bool header_seen = false;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;

  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    if (!header_seen) {
      if (!(fields >> p >> q)) {
        std::string stray;
        if (fields.clear(), std::istringstream(line) >> stray)
          parse_fail(source_name, line_no, "expected header \"p q\"");
        continue;  // blank or comment-only line before the header
      }
      if (p < 1 || q < 1)
        parse_fail(source_name, line_no, "p and q must be positive");
      header_seen = true;
      std::string trailing;
      if (fields >> trailing)
        parse_fail(source_name, line_no, "unexpected token after header");
      continue;
    }
    VertexLabel x, y;
    if (!(fields >> x.a >> x.b >> y.a >> y.b)) {
      std::string stray;
      if (fields.clear(), std::istringstream(line) >> stray)
        parse_fail(source_name, line_no,
                   "expected an edge line \"j k j' k'\"");
      continue;  // blank line
    }
    std::string trailing;
    if (fields >> trailing)
      parse_fail(source_name, line_no, "unexpected token after edge");
    if (x.a < 1 || x.a > p || y.a < 1 || y.a > p || x.b < 1 || x.b > q ||
        y.b < 1 || y.b > q)
      parse_fail(source_name, line_no, "label outside the grid");
    edges.emplace_back(x, y);
  }
  if (!header_seen)
    parse_fail(source_name, line_no ? line_no : 1, "missing header \"p q\"");
  return Graph::from_labels(p, q, edges);
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q") ||
      !j.contains("edges"))
    fail(ErrorKind::ParseError, "graph JSON needs p, q and edges");
  const int p = j.at("p").get<int>();
  const int q = j.at("q").get<int>();
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || e[0].size() != 2 || e[1].size() != 2)
      fail(ErrorKind::ParseError, "each edge must be [[j,k],[j2,k2]]");
    edges.push_back({VertexLabel{e[0][0].get<int>(), e[0][1].get<int>()},
                     VertexLabel{e[1][0].get<int>(), e[1][1].get<int>()}});
  }
  return Graph::from_labels(p, q, edges);
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
    edges.push_back(json::array(
        {json::array({x.a, x.b}), json::array({y.a, y.b})}));
  }
  return json{{"p", g.p()}, {"q", g.q()}, {"edges", edges}};
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open");
  char first = 0;
  in >> std::ws;
  if (!in.get(first)) fail(ErrorKind::ParseError, path + ": empty file");
  in.unget();
  if (first == '{') {
    json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ParseError, path + ": " + e.what());
    }
    return graph_from_json(j);
  }
  in.seekg(0);
  return parse_graph_text(in, path);
}

CirculantSpec circulant_from_json(const json& j) {
  if (!j.is_object() || !j.contains("first_row"))
    fail(ErrorKind::ParseError, "circulant JSON needs first_row");
  CirculantSpec spec;
  for (const json& e : j.at("first_row"))
    spec.first_row.push_back(complex_from_json(e));
  return spec;
}

json circulant_to_json(const CirculantSpec& spec) {
  return json{{"first_row", complex_vector_to_json(spec.first_row)}};
}

GroupFunctionZ2n z2n_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values"))
    fail(ErrorKind::ParseError, "group function JSON needs n and values");
  GroupFunctionZ2n f;
  f.n = j.at("n").get<int>();
  if (f.n < 1 || f.n > 20)
    fail(ErrorKind::ParseError, "n outside the supported range");
  for (const json& e : j.at("values")) f.values.push_back(e.get<double>());
  if (static_cast<int>(f.values.size()) != (1 << f.n))
    fail(ErrorKind::ParseError, "values must have length 2^n");
  return f;
}

json z2n_to_json(const GroupFunctionZ2n& f) {
  return json{{"n", f.n}, {"values", f.values}};
}

DensityMatrix density_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q") ||
      !j.contains("matrix"))
    fail(ErrorKind::ParseError, "density JSON needs p, q and matrix");
  const int p = j.at("p").get<int>();
  const int q = j.at("q").get<int>();
  const json& rows = j.at("matrix");
  const int n = static_cast<int>(rows.size());
  CMatrix m(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      fail(ErrorKind::ParseError, "matrix must be square");
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return DensityMatrix(std::move(m), p, q);
}

json density_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < rho.dim(); ++c)
      row.push_back(complex_to_json(rho.matrix()(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"p", rho.p()}, {"q", rho.q()}, {"matrix", rows}};
}

json complex_vector_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<cplx> complex_vector_from_json(const json& j) {
  std::vector<cplx> v;
  for (const json& e : j) v.push_back(complex_from_json(e));
  return v;
}

json decomposition_to_json(const Decomposition& d) {
  json terms = json::array();
  for (const ProductTerm& t : d.terms)
    terms.push_back(json{{"w", t.weight},
                         {"a", complex_vector_to_json(t.a)},
                         {"b", complex_vector_to_json(t.b)}});
  return json{{"p", d.p}, {"q", d.q}, {"terms", terms}};
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition d;
  d.p = j.at("p").get<int>();
  d.q = j.at("q").get<int>();
  for (const json& t : j.at("terms")) {
    ProductTerm term;
    term.weight = t.at("w").get<double>();
    term.a = complex_vector_from_json(t.at("a"));
    term.b = complex_vector_from_json(t.at("b"));
    d.terms.push_back(std::move(term));
  }
  return d;
}

json certificate_to_json(const Certificate& cert) {
  if (cert.kind == Certificate::Kind::DegreeViolation) {
    json vertices = json::array();
    for (int v : cert.vertices) vertices.push_back(v + 1);  // 1-based
    return json{{"kind", "degree_violation"},
                {"vertices", vertices},
                {"degree_diff", cert.diff}};
  }
  return json{{"kind", "negative_eigenvalue"},
              {"eigenvalue", cert.eigenvalue},
              {"eigenvector", complex_vector_to_json(cert.eigenvector)}};
}

json verdict_to_json(const Verdict& verdict) {
  json out{{"degree_condition", verdict.degree_condition},
           {"ppt", verdict.ppt}};
  switch (verdict.decision) {
    case Decision::Separable: out["decision"] = "separable"; break;
    case Decision::Entangled: out["decision"] = "entangled"; break;
    case Decision::Undecided: out["decision"] = "undecided"; break;
  }
  out["certificate"] = verdict.certificate
                           ? certificate_to_json(*verdict.certificate)
                           : json(nullptr);
  out["decomposition"] = verdict.decomposition
                             ? decomposition_to_json(*verdict.decomposition)
                             : json(nullptr);
  return out;
}

json sweep_report_to_json(const SweepReport& report, bool include_wall_time) {
  json family{{"p", report.p}, {"q", report.q}, {"mode", report.mode}};
  if (report.mode == "random") {
    family["seed"] = report.seed;
    family["count"] = report.requested;
  }
  json totals{{"graphs_scanned", report.totals.graphs_scanned},
              {"skipped_empty", report.totals.skipped_empty},
              {"degree_holds", report.totals.degree_holds},
              {"ppt_holds", report.totals.ppt_holds},
              {"separable_decided", report.totals.separable_decided},
              {"separable_holds", report.totals.separable_holds},
              {"degree_ppt_agreements", report.totals.degree_ppt_agreements},
              {"degree_ppt_disagreements",
               report.totals.degree_ppt_disagreements},
              {"degree_separability_disagreements",
               report.totals.degree_separability_disagreements}};
  json out{{"family", family}, {"totals", totals}};
  if (report.matchings) {
    out["matchings"] = json{
        {"matchings_total", report.matchings->matchings_total},
        {"perfect_entangling", report.matchings->perfect_entangling},
        {"degree_holds", report.matchings->degree_holds},
        {"transpose_closure_checked", report.matchings->transpose_closure_checked},
        {"transpose_closure_violations", report.matchings->transpose_closure_violations},
        {"decomposed", report.matchings->decomposed},
        {"decompose_failures", report.matchings->decompose_failures}};
  }
  json cexs = json::array();
  for (const Counterexample& cex : report.counterexamples) {
    json entry{{"kind", cex.kind},
               {"graph", graph_to_json(cex.graph)},
               {"degree", cex.degree},
               {"ppt", cex.ppt}};
    entry["separable"] = cex.separable ? json(*cex.separable) : json(nullptr);
    cexs.push_back(std::move(entry));
  }
  out["counterexamples"] = cexs;
  if (include_wall_time) out["wall_time_ms"] = report.wall_time_ms;
  return out;
}

json range_result_to_json(const RangeSearchResult& result) {
  json states = json::array();
  for (const RangeProductState& s : result.states)
    states.push_back(json{{"vector", complex_vector_to_json(s.vec)},
                          {"a", complex_vector_to_json(s.a)},
                          {"b", complex_vector_to_json(s.b)},
                          {"residual", s.residual}});
  return json{{"p", result.p},
              {"q", result.q},
              {"subspace_dimension", result.subspace_dimension},
              {"found", static_cast<int>(result.states.size())},
              {"states", states},
              {"orthogonality", result.overlaps},
              {"metadata",
               json{{"seed", result.options.seed},
                    {"restarts", result.options.restarts},
                    {"tolerance", result.options.tol}}}};
}

std::string sweep_csv(int p, int q) {
  const int n = p * q;
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  if (static_cast<int>(pairs.size()) > kMaxExhaustivePairBits)
    fail(ErrorKind::TooLarge, "CSV export follows the exhaustive budget");

  std::ostringstream out;
  out << "index,edges,degree,ppt,separable\n";
  const bool decide = n <= 6;
  const long long total = (1ll << pairs.size()) - 1;
  for (long long mask = 1; mask <= total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if (mask & (1ll << t)) edges.push_back(pairs[t]);
    const Graph g(p, q, std::move(edges));
    const bool degree = degree_condition_graph(g).holds;
    const bool ppt = ppt_test(density_of_graph(g)).ppt;
    out << mask << ',';
    bool first = true;
    for (const Edge& e : g.edges()) {
      const VertexLabel x = g.label_of(e.first), y = g.label_of(e.second);
      if (!first) out << ';';
      first = false;
      out << x.a << '.' << x.b << '-' << y.a << '.' << y.b;
    }
    out << ',' << (degree ? 1 : 0) << ',' << (ppt ? 1 : 0) << ',';
    if (decide) out << (ppt ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

}  // namespace graphdm
