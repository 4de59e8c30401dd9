#include <math.h>
#include <stdio.h>

#include "ncorr.h"

int main(void) {
    NcState *state = NULL;
    NcOptions opts = nc_default_options();
    double values[5];
    const double want[5] = {1.0, 1.0, 1.0, 2.0, 0.5};

    opts.n_samples = 200;
    if (nc_state_pseudo_entangled(1.0, &state) != NC_STATUS_OK) {
        fprintf(stderr, "constructor: %s\n", nc_last_error());
        return 1;
    }
    if (nc_measure_all(state, &opts, values) != NC_STATUS_OK) {
        fprintf(stderr, "measure: %s\n", nc_last_error());
        return 1;
    }
    for (int i = 0; i < 5; i++) {
        if (fabs(values[i] - want[i]) > 1e-9) {
            fprintf(stderr, "measure %d: %.17g\n", i, values[i]);
            return 1;
        }
    }
    nc_state_free(state);

    if (nc_state_horodecki(2.0, &state) != NC_STATUS_INVALID_ARGUMENT || state != NULL) {
        return 1;
    }
    printf("ok %s\n", nc_version());
    return 0;
}
