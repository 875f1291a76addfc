#ifndef SUPERQUANT_H
#define SUPERQUANT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Quantization method.
typedef enum SqMethod {
  SQ_METHOD_ITERATIVE = 0,
  SQ_METHOD_CLOSED_FORM = 1,
  SQ_METHOD_AFFINE = 2,
} SqMethod;

// Outcome of the iterative solver.
typedef enum SqSolution {
  SQ_SOLUTION_UNIQUE = 0,
  SQ_SOLUTION_NO_SOLUTION = 1,
  SQ_SOLUTION_AMBIGUOUS = 2,
} SqSolution;

// Result codes of every fallible call.
typedef enum SqStatus {
  SQ_STATUS_OK = 0,
  SQ_STATUS_NULL_POINTER = 1,
  SQ_STATUS_INVALID_UTF8 = 2,
  SQ_STATUS_PARSE = 3,
  SQ_STATUS_WEIGHT_MISMATCH = 4,
  SQ_STATUS_ZERO_DENOMINATOR = 5,
  SQ_STATUS_NO_SOLUTION = 6,
  SQ_STATUS_INVALID_ARGUMENT = 7,
  SQ_STATUS_PANIC = 8,
} SqStatus;

// Opaque differential operator.
typedef struct SqOperator SqOperator;

// Opaque quantization result.
typedef struct SqQuantization SqQuantization;

// Opaque superfunction.
typedef struct SqSuperFn SqSuperFn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the library.
const char *sq_last_error(void);

// Library version as a static string.
const char *sq_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sq_string_free(char *s);

// Parses an expression such as `"x^2*t1 + 3/2*t2"`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum SqStatus sq_superfn_parse(const char *text_ptr, struct SqSuperFn **out);

// Canonical text form; free with [`sq_string_free`]. Null on a null handle.
//
// # Safety
// `f` must be a live handle or null.
char *sq_superfn_to_string(const struct SqSuperFn *f);

// Product `a * b` in the Grassmann algebra.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum SqStatus sq_superfn_mul(const struct SqSuperFn *a,
                             const struct SqSuperFn *b,
                             struct SqSuperFn **out);

// # Safety
// `f` must come from this library and not be freed twice.
void sq_superfn_free(struct SqSuperFn *f);

// Quantizes the symbol `(f1, f2)` of degree `k_twice / 2` and weight `delta`
// on `lambda`-densities. Weights are exact fractions such as `"1/3"`.
//
// A vanishing pivot still yields `SQ_STATUS_OK`; inspect the result with
// [`sq_quantization_solution`].
//
// # Safety
// String arguments must be nul-terminated; handles must be live; `out` must be writable.
enum SqStatus sq_quantize(uint32_t k_twice,
                          const char *lambda,
                          const char *delta,
                          const struct SqSuperFn *f1,
                          const struct SqSuperFn *f2,
                          enum SqMethod m,
                          struct SqQuantization **out);

// # Safety
// `q` must be a live handle.
enum SqStatus sq_quantization_solution(const struct SqQuantization *q, enum SqSolution *out);

// Copies the quantized operator out of a result. Fails with
// `SQ_STATUS_NO_SOLUTION` when none exists.
//
// # Safety
// `q` must be a live handle; `out` must be writable.
enum SqStatus sq_quantization_operator(const struct SqQuantization *q, struct SqOperator **out);

// # Safety
// `q` must come from this library and not be freed twice.
void sq_quantization_free(struct SqQuantization *q);

// Deterministic JSON form; free with [`sq_string_free`]. Null on a null handle.
//
// # Safety
// `op` must be a live handle or null.
char *sq_operator_to_json(const struct SqOperator *op);

// Text form; free with [`sq_string_free`]. Null on a null handle.
//
// # Safety
// `op` must be a live handle or null.
char *sq_operator_to_string(const struct SqOperator *op);

// Applies the operator to a density.
//
// # Safety
// Handles must be live; `out` must be writable.
enum SqStatus sq_operator_apply(const struct SqOperator *op,
                                const struct SqSuperFn *f,
                                struct SqSuperFn **out);

// Lie derivative of the operator along the contact field with Hamiltonian `f`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum SqStatus sq_lie_op(const struct SqSuperFn *f,
                        const struct SqOperator *op,
                        struct SqOperator **out);

// `1` when the two operators are equal, `0` otherwise or on null input.
//
// # Safety
// Handles must be live or null.
int32_t sq_operator_equal(const struct SqOperator *a, const struct SqOperator *b);

// # Safety
// `op` must come from this library and not be freed twice.
void sq_operator_free(struct SqOperator *op);

// Randomized exact equivariance check; writes the number of generators (out
// of 8) that passed every trial.
//
// # Safety
// String arguments must be nul-terminated; `passed` must be writable.
enum SqStatus sq_verify_equivariance(uint32_t k_twice,
                                     const char *lambda,
                                     const char *delta,
                                     uint32_t trials,
                                     uint64_t seed,
                                     uint32_t max_degree,
                                     enum SqMethod m,
                                     uint32_t *passed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUPERQUANT_H */
