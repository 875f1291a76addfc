/* Build: cargo build -p superquant-ffi --release
 *        cc -Icrates/ffi/include crates/ffi/examples/quantize.c \
 *           target/release/libsuperquant_ffi.a -lpthread -ldl -lm -o quantize */
#include <stdio.h>

#include "superquant.h"

int main(void) {
    SqSuperFn *f1 = NULL, *f2 = NULL;
    SqQuantization *q = NULL;
    SqOperator *op = NULL;
    if (sq_superfn_parse("x", &f1) != SQ_STATUS_OK || sq_superfn_parse("0", &f2) != SQ_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", sq_last_error());
        return 1;
    }
    SqStatus st = sq_quantize(2, "0", "1/3", f1, f2, SQ_METHOD_ITERATIVE, &q);
    if (st == SQ_STATUS_OK) {
        st = sq_quantization_operator(q, &op);
    }
    if (st != SQ_STATUS_OK) {
        fprintf(stderr, "quantize failed (%d): %s\n", (int)st, sq_last_error());
        return 2;
    }
    char *json = sq_operator_to_json(op);
    printf("%s\n", json);
    sq_string_free(json);
    sq_operator_free(op);
    sq_quantization_free(q);
    sq_superfn_free(f1);
    sq_superfn_free(f2);
    return 0;
}
