#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include "curvelab.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *e = curvelab_last_error();                    \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    e ? e : "no error");                              \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    CurvelabCurve *c = NULL;
    CHECK(curvelab_curve_from_json("{\"kind\":\"support\",\"constant\":40,"
                                   "\"cos\":{\"3\":3},\"sin\":{\"2\":-1}}",
                                   &c) == CURVELAB_STATUS_OK);
    CHECK(curvelab_curve_is_support(c));

    CurvelabVec2 p;
    CHECK(curvelab_curve_point(c, 0.0, &p) == CURVELAB_STATUS_OK);
    CHECK(fabs(p.x - 43.0) < 1e-12 && fabs(p.y + 2.0) < 1e-12);

    size_t n = 0;
    CHECK(curvelab_singular_params(c, M_PI / 6, NULL, 0, &n) == CURVELAB_STATUS_OK);
    CHECK(n == 6);
    CurvelabSingularity small[2];
    CHECK(curvelab_singular_params(c, M_PI / 6, small, 2, &n) == CURVELAB_STATUS_BUFFER_TOO_SMALL);
    CurvelabSingularity *buf = malloc(n * sizeof *buf);
    CHECK(curvelab_singular_params(c, M_PI / 6, buf, n, &n) == CURVELAB_STATUS_OK);
    CHECK(buf[0].is_cusp);
    free(buf);

    CurvelabGaussBonnet gb;
    CHECK(curvelab_gauss_bonnet(c, 1e-8, &gb) == CURVELAB_STATUS_OK);
    CHECK(gb.relative_residual < 1e-6 && gb.swallowtails == 6);

    CHECK(curvelab_evolutoid_point(c, 4.0, 0.0, &p) == CURVELAB_STATUS_INVALID_INPUT);
    CHECK(curvelab_last_error() != NULL);
    curvelab_curve_free(c);

    CHECK(curvelab_curve_from_json("{\"kind\":\"support\",\"constant\":3}", &c) == CURVELAB_STATUS_OK);
    CHECK(curvelab_gauss_bonnet(c, 1e-8, &gb) == CURVELAB_STATUS_DEGENERATE);
    curvelab_curve_free(c);
    printf("ok %s\n", curvelab_version());
    return 0;
}
