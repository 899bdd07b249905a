#ifndef MN22_MN22_HPP
#define MN22_MN22_HPP

// Umbrella header: the whole library.

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"
#include "mn22/inequalities.hpp"
#include "mn22/io.hpp"
#include "mn22/lp.hpp"
#include "mn22/parallel.hpp"
#include "mn22/polytope.hpp"
#include "mn22/quantum.hpp"
#include "mn22/verify.hpp"

#endif  // MN22_MN22_HPP
