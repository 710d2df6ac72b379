#include <stdio.h>
#include <string.h>
#include "faultdiag.h"

static int fail(const char *what, FdStatus st) {
    const char *msg = fd_last_error_message();
    fprintf(stderr, "%s: status %d: %s\n", what, (int)st, msg ? msg : "(none)");
    return 1;
}

int main(void) {
    FdNetwork *net = NULL;
    FdStatus st = fd_network_gen_s1(3, &net);
    if (st != FD_STATUS_OK) return fail("gen", st);
    if (fd_network_edge_count(net) != 6 || fd_network_arity(net) != 3) return fail("shape", st);

    unsigned char table[8];
    size_t len = 0;
    st = fd_truth_table(net, NULL, table, sizeof table, &len);
    if (st != FD_STATUS_OK || len != 8) return fail("table", st);
    for (size_t i = 0; i < len; i++) {
        if (table[i] != 1) return fail("table value", st);
    }

    unsigned char input[2] = {1, 0};
    bool out = false;
    st = fd_evaluate(net, NULL, input, 2, &out);
    if (st != FD_STATUS_ARITY || fd_last_error_message() == NULL) return fail("arity error expected", st);

    st = fd_vc_decide("{\"n\": 3, \"edges\": [[1, 2], [1, 3], [2, 3]]}", 2, FD_VARIANT_Q2, &out);
    if (st != FD_STATUS_OK || !out) return fail("vc", st);

    char *json = NULL;
    st = fd_network_to_json(net, &json);
    if (st != FD_STATUS_OK || strstr(json, "\"version\"") == NULL) return fail("json", st);
    fd_string_free(json);
    fd_network_free(net);
    printf("ok %s\n", fd_version());
    return 0;
}
