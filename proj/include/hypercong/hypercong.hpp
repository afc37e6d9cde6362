#pragma once

#include "hypercong/errors.hpp"
#include "hypercong/numtheory.hpp"
#include "hypercong/padic_core.hpp"
#include "hypercong/trunc_hyper.hpp"
#include "hypercong/finite_field.hpp"
#include "hypercong/hyp_sums.hpp"
#include "hypercong/zeta_factors.hpp"
#include "hypercong/modular_forms.hpp"
#include "hypercong/factorizations.hpp"
#include "hypercong/harness.hpp"
