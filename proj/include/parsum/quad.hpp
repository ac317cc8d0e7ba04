#pragma once

#include <boost/multiprecision/float128.hpp>

namespace parsum {

/// IEEE binary128 scalar (libquadmath). Used where double cannot resolve the
/// gap of an inequality on badly conditioned input.
using quad = boost::multiprecision::float128;

} // namespace parsum
