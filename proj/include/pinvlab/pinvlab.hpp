#pragma once

// Umbrella header: structured operators, dual-route Moore-Penrose inverses,
// direct-sum and absolute-value algebra, perturbation updates, truncation
// experiments, and the identity verification suite.

#include "pinvlab/identities.hpp"
#include "pinvlab/instances.hpp"
#include "pinvlab/io.hpp"
#include "pinvlab/matrix.hpp"
#include "pinvlab/operator.hpp"
#include "pinvlab/perturbation.hpp"
#include "pinvlab/pinv.hpp"
#include "pinvlab/polar.hpp"
#include "pinvlab/rng.hpp"
#include "pinvlab/solve.hpp"
#include "pinvlab/svd.hpp"
#include "pinvlab/truncation.hpp"
