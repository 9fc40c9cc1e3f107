#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "polar_grassmann.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    PgCode *code = NULL;
    CHECK(pg_code_build(2, 2, 3, &code) == PG_STATUS_OK);
    CHECK(pg_code_length(code) == 40);
    CHECK(pg_code_dimension(code) == 10);

    uint64_t d = 0;
    CHECK(pg_code_min_distance(code, 1u << 20, &d) == PG_STATUS_OK);
    CHECK(d == 18);
    CHECK(pg_code_min_distance(code, 10, &d) == PG_STATUS_BUDGET_EXCEEDED);
    char msg[128];
    CHECK(pg_last_error_message(msg, sizeof msg) > 0);
    CHECK(strstr(msg, "59049") != NULL);
    pg_code_free(code);

    PgLineCodec *codec = NULL;
    CHECK(pg_codec_new(3, 3, &codec) == PG_STATUS_OK);
    uint64_t n = pg_codec_length(codec);
    CHECK(n == 3640);

    uint8_t line[14];
    CHECK(pg_codec_unrank(codec, 1234, line, sizeof line) == PG_STATUS_OK);
    uint64_t index = 0;
    CHECK(pg_codec_rank(codec, line, sizeof line, &index) == PG_STATUS_OK);
    CHECK(index == 1234);

    uint8_t message[21] = {1, 2, 0, 0, 1, 0, 2, 0, 0, 0, 1, 0, 0, 2, 0, 0, 1, 0, 0, 0, 2};
    uint8_t *word = malloc(n);
    uint8_t *fixed = malloc(n);
    CHECK(pg_codec_encode(codec, message, sizeof message, word, n) == PG_STATUS_OK);
    word[77] = (uint8_t)((word[77] + 1) % 3);
    uint64_t changed = 0, ties = 0;
    CHECK(pg_codec_decode(codec, word, n, fixed, n, &changed, &ties) == PG_STATUS_OK);
    CHECK(changed == 1 && ties == 0);
    CHECK(pg_codec_decode(codec, word, n, fixed, 10, NULL, NULL) == PG_STATUS_BUFFER_TOO_SMALL);
    free(word);
    free(fixed);
    pg_codec_free(codec);
    pg_codec_free(NULL);

    puts("ok");
    return 0;
}
