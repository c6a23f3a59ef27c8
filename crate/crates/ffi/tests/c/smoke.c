#include <stdio.h>
#include <string.h>
#include "sqrank.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    SqPartition *p = NULL;
    CHECK(sq_partition_parse("19,16,9,2,1", &p) == SQ_STATUS_OK);
    size_t r = 99;
    CHECK(sq_sqrank(p, &r) == SQ_STATUS_OK);
    CHECK(r == 2);
    CHECK(sq_partition_weight(p) == 47);
    sq_partition_free(p);

    CHECK(sq_partition_parse("3,x", &p) == SQ_STATUS_INVALID_INPUT);
    CHECK(strstr(sq_last_error(), "x") != NULL);

    SqSeries *g = NULL;
    CHECK(sq_gaussian(4, 2, &g) == SQ_STATUS_OK);
    int64_t c = 0;
    CHECK(sq_series_coeff(g, 2, &c) == SQ_STATUS_OK && c == 2);
    char *text = sq_series_to_string(g);
    CHECK(strcmp(text, "1 + q + 2*q^2 + q^3 + q^4") == 0);
    sq_string_free(text);
    sq_series_free(g);

    char *next = NULL;
    CHECK(sq_bbs_evolve("0110010", &next) == SQ_STATUS_OK);
    CHECK(strcmp(next, "0001101") == 0);
    sq_string_free(next);
    puts("ok");
    return 0;
}
