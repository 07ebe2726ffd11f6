/*
 * Copyright 2026 The allometry authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Compiled as C so the public header stays valid C.
 */
#include <math.h>

#include "allometry/allometry.h"

int allo_c_header_check(void) {
    allo_distribution spec = {ALLO_PARETO, 1.0, 0.5, INFINITY};
    double h = 0.0;
    if (allo_distribution_validate(&spec) != ALLO_OK) {
        return 1;
    }
    if (allo_analytic_entropy(&spec, &h) != ALLO_OK) {
        return 2;
    }
    return h > 0.0 ? 0 : 3;
}
