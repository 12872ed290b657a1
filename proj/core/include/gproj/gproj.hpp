#pragma once

// Convenience umbrella for the whole library.

#include "gproj/decomposition.hpp"
#include "gproj/errors.hpp"
#include "gproj/geometry.hpp"
#include "gproj/oracle.hpp"
#include "gproj/problem_io.hpp"
#include "gproj/projection.hpp"
#include "gproj/stability.hpp"
#include "gproj/types.hpp"
#include "gproj/variants.hpp"
