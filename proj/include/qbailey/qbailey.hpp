#pragma once

// Umbrella header: exact q-series arithmetic, q-products, Bailey pairs and
// transforms, indefinite theta sums, and the identity registry.

#include "errors.hpp"
#include "exponent.hpp"
#include "monomial.hpp"
#include "series.hpp"
#include "qproducts.hpp"
#include "hecke.hpp"
#include "bailey.hpp"
#include "mock_theta.hpp"
#include "catalog.hpp"
