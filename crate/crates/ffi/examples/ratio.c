/* Build: cc -I crates/ffi/include ratio.c target/debug/libortho_lvalues_ffi.a -lpthread -ldl -lm */
#include <stdio.h>

#include "ortho_lvalues.h"

int main(void) {
    OlWeight *w = NULL;
    if (ol_weight_new("3,2", -3, NULL, &w) != OL_STATUS_OK) {
        fprintf(stderr, "%s\n", ol_last_error());
        return 1;
    }
    int64_t lo = 0, hi = 0;
    char *ratio = NULL;
    if (ol_critical_set(w, &lo, &hi) != OL_STATUS_OK || ol_ratio_l_inf(w, &ratio) != OL_STATUS_OK) {
        fprintf(stderr, "%s\n", ol_last_error());
        ol_weight_free(w);
        return 1;
    }
    printf("critical set [%lld, %lld]\n", (long long)lo, (long long)hi);
    printf("ratio %s\n", ratio);
    ol_string_free(ratio);
    ol_weight_free(w);
    return 0;
}
