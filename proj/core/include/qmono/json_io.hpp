#pragma once

// JSON (de)serialization: torus and Heisenberg elements, Hopf instances, check reports.
// Tensors are stored sparsely as [i, j, k, re, im] rows, matrices as [i, j, re, im],
// vectors as [i, re, im].

#include "qmono/heisenberg.hpp"
#include "qmono/hopf_lazy.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace qmono::io {

using json = nlohmann::json;

json to_json(const TorusElement& x);
TorusElement torus_from_json(const json& j);

json to_json(const HeisenbergElement& f);
HeisenbergElement heisenberg_from_json(const json& j, ContextPtr ctx);

json to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j, GridSpec base = {});

json to_json(const hopf::CheckReport& r);
json to_json(const hopf::ModuleAlgebra& A);
hopf::ModuleAlgebra instance_from_json(const json& j);

hopf::ModuleAlgebra load_instance(const std::filesystem::path& p);
void save_instance(const hopf::ModuleAlgebra& A, const std::filesystem::path& p);

}  // namespace qmono::io
