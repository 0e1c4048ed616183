#pragma once

// Complex hyperbolic plane toolkit: PU(2,1) isometries, boundary flows,
// Dehn-surgery slope arithmetic and the figure-eight representation family.

#include "crkit/complex3.hpp"
#include "crkit/cubic.hpp"
#include "crkit/eigen3.hpp"
#include "crkit/errors.hpp"
#include "crkit/expm.hpp"
#include "crkit/fig8.hpp"
#include "crkit/flows.hpp"
#include "crkit/io.hpp"
#include "crkit/isometry.hpp"
#include "crkit/linking.hpp"
#include "crkit/models.hpp"
#include "crkit/su21.hpp"
#include "crkit/surgery.hpp"
#include "crkit/tol.hpp"
