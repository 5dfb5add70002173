#pragma once

#include "counterexamples.hpp"
#include "deciders.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "ideal.hpp"
#include "integer.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "local.hpp"
#include "matrix.hpp"
#include "place.hpp"
#include "poly.hpp"
#include "quad.hpp"
#include "report.hpp"
#include "scalar.hpp"
#include "strata.hpp"

namespace locglob {
inline constexpr const char* kVersion = "locglob 0.1.0";
}
