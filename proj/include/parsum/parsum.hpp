#pragma once

// Core library. JSON/text I/O lives in parsum/io.hpp, the quad-precision
// scalar in parsum/quad.hpp.
#include "parsum/errors.hpp"
#include "parsum/generator.hpp"
#include "parsum/inequality_lab.hpp"
#include "parsum/lab_suite.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"
#include "parsum/means.hpp"
#include "parsum/random.hpp"
#include "parsum/search.hpp"
