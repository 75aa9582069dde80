#include <stdio.h>
#include "hkg_canon.h"

int main(void) {
    const char *curve =
        "{\"p\": 7, \"steps\": [{\"n\": 1, \"additive\": [{\"power\": 0, \"coeff\": -1}],"
        " \"rhs\": [{\"coeff\": 1, \"exps\": [4]}]}]}";
    HkgTower *tower = NULL;
    HkgIdeal *ideal = NULL;
    if (hkg_tower_from_json(curve, &tower) != HKG_STATUS_OK ||
        hkg_ideal_build(tower, &ideal) != HKG_STATUS_OK) {
        fprintf(stderr, "%s\n", hkg_last_error_message());
        return 1;
    }
    HkgVerifyResult r;
    HkgStatus s = hkg_ideal_verify(ideal, true, 200000, &r);
    printf("genus %llu, %zu generators, dim J %zu, kernel %zu, %s\n",
           (unsigned long long)hkg_tower_genus(tower), hkg_ideal_len(ideal),
           r.dim_j, r.dim_kernel, s == HKG_STATUS_OK ? "pass" : "fail");
    hkg_ideal_free(ideal);
    hkg_tower_free(tower);
    return s == HKG_STATUS_OK ? 0 : 2;
}
