#include <stdio.h>
#include <string.h>

#include "gbsn.h"

int main(void) {
    GbsnGraph *g = NULL;
    if (gbsn_graph_builtin("bs", &g) != GBSN_STATUS_OK) {
        fprintf(stderr, "builtin: %s\n", gbsn_last_error());
        return 1;
    }
    char *out = NULL;
    if (gbsn_normalize_json(g, "t^-1 a^2 t", &out) != GBSN_STATUS_OK) {
        fprintf(stderr, "normalize: %s\n", gbsn_last_error());
        return 1;
    }
    printf("%s\n", out);
    gbsn_string_free(out);
    if (gbsn_level_quotient_json(g, 2, 1, &out) != GBSN_STATUS_DOMAIN_ERROR) {
        return 1;
    }
    printf("error: %s\n", gbsn_last_error());
    gbsn_graph_free(g);
    return 0;
}
