/* Reads a model file, expands it to the requested order and prints LaTeX. */
#include <stdio.h>
#include <stdlib.h>

#include "kamiltonian.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    rewind(f);
    char *buf = malloc(n + 1);
    fread(buf, 1, n, f);
    buf[n] = 0;
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    if (argc < 3) {
        fprintf(stderr, "usage: %s MODEL ORDER\n", argv[0]);
        return 2;
    }
    char *src = slurp(argv[1]);
    if (!src) {
        perror(argv[1]);
        return 3;
    }
    KamModel *model = NULL;
    KamExpansion *x = NULL;
    char *text = NULL;
    int rc = 0;
    if (kam_model_parse(src, &model) != KAM_STATUS_OK ||
        kam_expand(model, (uint32_t)atoi(argv[2]), NULL, NULL, &x) != KAM_STATUS_OK ||
        kam_expansion_render(x, KAM_FORMAT_LATEX, &text) != KAM_STATUS_OK) {
        fprintf(stderr, "error: %s\n", kam_last_error_message());
        rc = 1;
    } else {
        puts(text);
    }
    kam_string_free(text);
    kam_expansion_free(x);
    kam_model_free(model);
    free(src);
    return rc;
}
