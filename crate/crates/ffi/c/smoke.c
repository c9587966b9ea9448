/* Build from crates/ffi/c: cc smoke.c -I../include ../../../target/debug/libexotic_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "exotic.h"

int main(void) {
    ExoPoint *pt = NULL;
    if (exo_point_normal_basis("", "2,1", 2, &pt) != EXO_STATUS_OK) {
        fprintf(stderr, "error: %s\n", exo_last_error());
        return 1;
    }
    char *census = NULL;
    ExoStatus st = exo_fiber_census_json(pt, "1,2", 1000000, &census);
    if (st != EXO_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)st, exo_last_error());
        exo_point_free(pt);
        return 1;
    }
    printf("%s\n", census);
    exo_string_free(census);
    exo_point_free(pt);
    uint32_t passed = 0, total = 0;
    st = exo_verify_identities(&passed, &total);
    printf("identities: %u/%u\n", passed, total);
    return st == EXO_STATUS_OK ? 0 : 1;
}
