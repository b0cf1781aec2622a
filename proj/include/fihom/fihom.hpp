#pragma once

// Exact-arithmetic workbench for truncated FI-modules: Koszul-complex
// homology, the shift/derivative long exact sequence, and the regularity,
// torsion, acyclicity, and monotonicity bounds as executable checks.

#include "fihom/ext_degree.hpp"
#include "fihom/fields.hpp"
#include "fihom/fimodule.hpp"
#include "fihom/fincat.hpp"
#include "fihom/fuzz.hpp"
#include "fihom/invariants.hpp"
#include "fihom/koszul.hpp"
#include "fihom/linalg.hpp"
#include "fihom/matrix.hpp"
#include "fihom/presentation_io.hpp"
#include "fihom/sparse.hpp"
