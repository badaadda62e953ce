#pragma once

#include <nlohmann/json.hpp>

#include "hpf/ensemble.hpp"

namespace hpf {

/// Builds a measure from a descriptor object:
///   {"kind": "gaussian" | "jacobi" | "uniform" | "circular",
///    "a": ..., "b": ..., "lo": ..., "hi": ...,
///    "atoms": [{"x": ..., "c": ...}], "quad_order": ...}
/// The circular kind takes (beta, n) from the enclosing computation.
Measure measure_from_json(const nlohmann::json& j, int beta, int n);

nlohmann::ordered_json result_to_json(const ZnResult& result);

}  // namespace hpf
