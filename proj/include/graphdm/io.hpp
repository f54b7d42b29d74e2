#ifndef GRAPHDM_IO_HPP
#define GRAPHDM_IO_HPP

#include <istream>
#include <string>

#include <json.hpp>

#include "graphdm/density.hpp"
#include "graphdm/graph.hpp"
#include "graphdm/separability.hpp"
#include "graphdm/sweep.hpp"

namespace graphdm {

using json = nlohmann::ordered_json;

// Text format: line 1 "p q", one "j k j' k'" line per edge (1-based
// labels), '#' starts a comment. Parse errors carry the line number.
Graph parse_graph_text(std::istream& in, const std::string& source_name);

// {"p":int,"q":int,"edges":[[[j,k],[j2,k2]],...]}
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);

// Auto-detects JSON (first non-space byte '{') vs text.
Graph load_graph_file(const std::string& path);

// {"first_row":[[re,im],...]}
CirculantSpec circulant_from_json(const json& j);
json circulant_to_json(const CirculantSpec& spec);

// {"n":int,"values":[...]}
GroupFunctionZ2n z2n_from_json(const json& j);
json z2n_to_json(const GroupFunctionZ2n& f);

// {"p":int,"q":int,"matrix":[[[re,im],...] per row]}
DensityMatrix density_from_json(const json& j);
json density_to_json(const DensityMatrix& rho);

json complex_vector_to_json(const std::vector<cplx>& v);
std::vector<cplx> complex_vector_from_json(const json& j);

// {"p":..,"q":..,"terms":[{"w":..,"a":[[re,im],..],"b":[[re,im],..]},..]}
json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j);

json certificate_to_json(const Certificate& cert);
json verdict_to_json(const Verdict& verdict);

// Canonical serialization omits wall_time_ms so identical sweeps compare
// byte-for-byte; pass include_wall_time = true for informational output.
json sweep_report_to_json(const SweepReport& report,
                          bool include_wall_time = true);

json range_result_to_json(const RangeSearchResult& result);

// CSV summary for exhaustive sweeps: one row per graph.
std::string sweep_csv(int p, int q);

}  // namespace graphdm

#endif
