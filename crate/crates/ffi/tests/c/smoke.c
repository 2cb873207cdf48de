#include <math.h>
#include <stdio.h>
#include <string.h>

#include "qnlimit.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            char msg[256];                                            \
            qnl_last_error_message(msg, sizeof msg);                  \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, msg); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    QnlInterferometer *ifo = NULL;
    CHECK(qnl_interferometer_new_default(&ifo) == QNL_STATUS_OK);

    double omega = 2.0 * 3.141592653589793 * 100.0;
    double s = 0.0, zeta = -1.0, sql = 0.0;
    CHECK(qnl_optimal_spectrum(ifo, omega, &s, &zeta) == QNL_STATUS_OK);
    CHECK(s > 0.0 && zeta >= 0.0 && zeta < 3.1416);
    CHECK(qnl_sql(ifo, omega, &sql) == QNL_STATUS_OK);
    CHECK(fabs(sql / 3.33925e-48 - 1.0) < 1e-4);

    double a4 = 0.0, named = 0.0;
    CHECK(qnl_loss_limit(ifo, omega, 0.25, &a4) == QNL_STATUS_OK);
    CHECK(qnl_curve(ifo, "loss_limit_a4", omega, &named) == QNL_STATUS_OK);
    CHECK(a4 == named);
    CHECK(qnl_loss_limit(ifo, omega, 0.5, &a4) == QNL_STATUS_INVALID_ARGUMENT);

    double f[3] = {10.0, 100.0, 1000.0}, out[3];
    CHECK(qnl_sweep_optimal(ifo, f, 3, out) == QNL_STATUS_OK);
    CHECK(out[1] == s);

    QnlInterferometer *bad = NULL;
    CHECK(qnl_interferometer_from_json("{\"L\": 1}", 5.0, 5000.0, &bad) == QNL_STATUS_INVALID_CONFIG);
    CHECK(bad == NULL);

    qnl_interferometer_free(ifo);
    printf("ok %s\n", qnl_version());
    return 0;
}
