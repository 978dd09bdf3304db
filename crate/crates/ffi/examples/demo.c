#include <stdio.h>
#include "intsim.h"

int main(void) {
    IntsimMatrix *m = NULL;
    if (intsim_matrix_parse("{\"ring\":\"Z\",\"entries\":[[0,2],[3,5]]}", &m) != INTSIM_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", intsim_last_error());
        return 1;
    }
    IntsimReport *r = NULL;
    IntsimStatus s = intsim_decide(m, INTSIM_KIND_TRI, INTSIM_LEVEL_RING, 0, 1, 10000000, &r);
    printf("%s", intsim_report_json(r));

    IntsimReport *v = NULL;
    IntsimStatus vs = intsim_verify(intsim_report_json(r), &v);
    printf("verify status %d\n", (int)vs);

    intsim_report_free(v);
    intsim_report_free(r);
    intsim_matrix_free(m);
    return s == INTSIM_STATUS_OK && vs == INTSIM_STATUS_OK ? 0 : 1;
}
