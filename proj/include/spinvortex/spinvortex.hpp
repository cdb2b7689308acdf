#pragma once

// Everything except render.hpp (libpng) and report.hpp (nlohmann_json).

#include "errors.hpp"
#include "special.hpp"
#include "units.hpp"
#include "grid.hpp"
#include "fft.hpp"
#include "field_ops.hpp"
#include "angular_momentum.hpp"
#include "pauli.hpp"
#include "dirac.hpp"
#include "holography.hpp"
#include "io.hpp"
