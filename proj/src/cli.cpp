#include "graphdm/cli.hpp"

#include <fstream>
#include <sstream>

namespace graphdm::cli {

namespace {

json error_payload(const Error& e) {
  return json{{"error", to_string(e.kind())}, {"message", e.what()}};
}

CommandOutput failure(const Error& e) {
  return CommandOutput{exit_code_for(e), error_payload(e), e.what()};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
  return j;
}

Graph load_graph_with_split(const std::string& path, std::optional<int> p,
                            std::optional<int> q) {
  Graph g = load_graph_file(path);
  if (p && q && (*p != g.p() || *q != g.q())) g = g.with_split(*p, *q);
  return g;
}

json analyze_graph(const Graph& g) {
  const DensityMatrix rho = density_of_graph(g);
  const DegreeConditionGraph dc = degree_condition_graph(g);
  const PptResult ppt = ppt_test(rho);

  const EigenSystem spectrum = hermitian_eigen(rho.matrix());
  int rank = 0;
  for (double v : spectrum.values)
    if (v > 1e-10) ++rank;

  json out{{"p", g.p()},
           {"q", g.q()},
           {"edges", g.edge_count()},
           {"degree", dc.holds},
           {"ppt", ppt.ppt}};
  out["separable"] =
      g.vertex_count() <= 6 ? json(ppt.ppt) : json(nullptr);
  out["laplacian"] = json{{"trace", 2 * g.edge_count()}, {"rank", rank}};
  out["degree_condition"] = json{{"holds", dc.holds}, {"diff", dc.diff}};
  json ppt_detail{{"holds", ppt.ppt}, {"min_eigenvalue", ppt.min_eigenvalue}};
  if (!ppt.ppt) ppt_detail["witness"] = complex_vector_to_json(ppt.witness);
  out["ppt_detail"] = ppt_detail;
  if (g.vertex_count() <= 6)
    out["verdict"] = verdict_to_json(decide_low_dim(rho));
  return out;
}

}  // namespace

int exit_code_for(const Error& error) { return error.internal() ? 2 : 1; }

CommandOutput analyze(const std::string& graph_file, std::optional<int> p,
                      std::optional<int> q) {
  try {
    const Graph g = load_graph_with_split(graph_file, p, q);
    return CommandOutput{0, analyze_graph(g), ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

CommandOutput decompose(const std::string& input_file, Family family,
                        std::optional<int> arg1, std::optional<int> arg2) {
  try {
    Decomposition d;
    DensityMatrix rho = DensityMatrix::trusted(CMatrix::identity(1), 1, 1);
    switch (family) {
      case Family::NearestPoint:
      case Family::Matching: {
        const Graph g = load_graph_file(input_file);
        rho = density_of_graph(g);
        const DecomposeResult result = family == Family::NearestPoint
                                           ? decompose_nearest_point(g)
                                           : decompose_perfect_matching(g);
        if (!result.separable()) {
          const json payload{
              {"error", "DegreeViolation"},
              {"certificate", certificate_to_json(*result.certificate)}};
          return CommandOutput{1, payload,
                               "DegreeViolation: the degree condition fails, "
                               "rho(G) is entangled"};
        }
        d = *result.decomposition;
        break;
      }
      case Family::BlockMatching: {
        const Graph g = load_graph_file(input_file);
        rho = density_of_graph(g);
        d = decompose_block_matching(g);
        break;
      }
      case Family::Circulant: {
        if (!arg1 || !arg2)
          fail(ErrorKind::DimensionMismatch, "--circulant needs p and q");
        const CirculantSpec spec = circulant_from_json(load_json_file(input_file));
        rho = circulant_density(spec, *arg1, *arg2);
        d = decompose_circulant(spec, *arg1, *arg2);
        break;
      }
      case Family::Z2n: {
        if (!arg1 || !arg2)
          fail(ErrorKind::DimensionMismatch, "--z2n needs k and l");
        const GroupFunctionZ2n f = z2n_from_json(load_json_file(input_file));
        rho = group_density_z2n(f, *arg1, *arg2);
        d = decompose_z2n(f, *arg1, *arg2);
        break;
      }
    }
    const VerifyReport verify = verify_decomposition(d, rho);
    json payload{{"decomposition", decomposition_to_json(d)},
                 {"verify",
                  json{{"ok", verify.ok},
                       {"reconstruction_error", verify.reconstruction_error},
                       {"terms", static_cast<int>(d.terms.size())}}}};
    return CommandOutput{0, payload, ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

CommandOutput sweep(const SweepRequest& request) {
  try {
    const Execution exec =
        request.serial ? Execution::Serial : Execution::Parallel;
    SweepReport report;
    switch (request.mode) {
      case SweepRequest::Mode::Exhaustive:
        report = sweep_graphs(
            request.p, request.q,
            SweepMode{SweepMode::Kind::Exhaustive, 0, 0}, exec);
        break;
      case SweepRequest::Mode::Random:
        report = sweep_graphs(
            request.p, request.q,
            SweepMode{SweepMode::Kind::Random, request.seed, request.count},
            exec);
        break;
      case SweepRequest::Mode::Matchings:
        report = sweep_matchings(request.p, request.q, exec);
        break;
    }

    const json payload = sweep_report_to_json(report);
    std::string diagnostics;
    const long long genuine = report.totals.degree_separability_disagreements;
    const long long equivalence = report.totals.degree_ppt_disagreements;
    {
      std::ostringstream msg;
      msg << report.mode << " sweep " << request.p << "x" << request.q << ": "
          << report.totals.graphs_scanned << " graphs, "
          << equivalence << " degree/PPT disagreements, " << genuine
          << " conjecture counterexamples";
      if (genuine > 0 || equivalence > 0) msg << "  <-- COUNTEREXAMPLES FOUND";
      diagnostics = msg.str();
    }

    if (request.out_file) {
      std::ofstream out(*request.out_file);
      if (!out)
        fail(ErrorKind::ParseError, *request.out_file + ": cannot write");
      out << payload.dump(2) << '\n';
    }
    if (request.csv_file) {
      if (request.mode != SweepRequest::Mode::Exhaustive)
        fail(ErrorKind::ParseError, "--csv is available for exhaustive sweeps");
      std::ofstream out(*request.csv_file);
      if (!out)
        fail(ErrorKind::ParseError, *request.csv_file + ": cannot write");
      out << sweep_csv(request.p, request.q);
    }
    return CommandOutput{0, payload, diagnostics};
  } catch (const Error& e) {
    return failure(e);
  }
}

CommandOutput range_search(const RangeSearchRequest& request) {
  try {
    std::optional<Graph> graph;
    std::ifstream probe(request.input_file);
    if (!probe)
      fail(ErrorKind::ParseError, request.input_file + ": cannot open");
    char first = 0;
    probe >> std::ws;
    probe.get(first);
    probe.close();

    DensityMatrix rho = DensityMatrix::trusted(CMatrix::identity(1), 1, 1);
    if (first == '{') {
      const json j = load_json_file(request.input_file);
      if (j.contains("matrix")) {
        rho = density_from_json(j);
        if (request.p && request.q) rho = rho.with_split(*request.p, *request.q);
      } else {
        graph = graph_from_json(j);
      }
    } else {
      graph = load_graph_file(request.input_file);
    }
    if (graph) {
      if (request.p && request.q) graph = graph->with_split(*request.p, *request.q);
      rho = density_of_graph(*graph);
    }
    if (request.complement) rho = complement_density(rho);

    RangeSearchOptions options;
    options.seed = request.seed;
    options.restarts = request.restarts;
    options.tol = request.tol;
    const RangeSearchResult result = range_product_states(rho, options);

    json payload = range_result_to_json(result);
    if (request.complement)
      payload["complement"] =
          json{{"normalization", "(I - rho) / (dim - 1)"}};
    if (graph) {
      const auto classification = classify_matching(*graph);
      bool entangling = classification.perfect_matching && graph->q() % 2 == 0;
      if (entangling)
        for (const Edge& e : graph->edges())
          entangling = entangling && is_entangled_edge(*graph, e);
      if (entangling)
        payload["conjectured_count"] = graph->p() * (graph->q() / 2);
    }

    std::ostringstream msg;
    msg << "found " << result.states.size()
        << " product states in a rank-" << result.subspace_dimension
        << " range";
    if (payload.contains("conjectured_count"))
      msg << " (conjectured: " << payload["conjectured_count"].get<int>()
          << ")";
    return CommandOutput{0, payload, msg.str()};
  } catch (const Error& e) {
    return failure(e);
  }
}

CommandOutput figures() {
  try {
    const ExampleGraphs figs = example_graphs();
    json payload{
        {"mixed_matching_4x4", graph_to_json(figs.mixed_matching_4x4)},
        {"block_matching_6x4", graph_to_json(figs.block_matching_6x4)},
        {"irreducible_matching_3x4", graph_to_json(figs.irreducible_matching_3x4)},
        {"notes",
         json{{"irreducible_matching_3x4",
               "constructed representative: perfect entangling matching on "
               "3x4 satisfying the degree condition, containing no "
               "cris-cross or tally mark and admitting no column-pair "
               "split; verified programmatically"}}}};
    return CommandOutput{0, payload, ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

}  // namespace graphdm::cli
