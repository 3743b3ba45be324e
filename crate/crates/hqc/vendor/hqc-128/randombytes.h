#ifndef PQIES_HQC_RANDOMBYTES_H
#define PQIES_HQC_RANDOMBYTES_H

#include <stddef.h>
#include <stdint.h>

/* Supplied by the Rust wrapper: draws from the caller's randomness source. */
#define randombytes pqies_hqc_randombytes
int randombytes(uint8_t *output, size_t n);

#endif
