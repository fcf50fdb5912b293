#include <stdio.h>
#include <string.h>

#include "premkit.h"

int main(void) {
    int letters[] = {1, 2, -1, -2};
    PremkitBraid *b = NULL;
    if (premkit_braid_new(3, letters, 4, &b) != PREMKIT_STATUS_OK) {
        fprintf(stderr, "%s\n", premkit_last_error());
        return 1;
    }
    size_t images[3];
    size_t written = 0;
    premkit_braid_permutation(b, images, 3, &written);
    bool infinite = false;
    premkit_braid_humphries(b, &infinite);
    premkit_braid_free(b);
    printf("permutation %zu %zu %zu, infinite order %d\n", images[0], images[1], images[2], infinite);

    char *report = NULL;
    if (premkit_run_json("{\"command\":\"selftest\"}", &report) != PREMKIT_STATUS_OK) {
        fprintf(stderr, "%s\n", premkit_last_error());
        return 1;
    }
    int ok = strstr(report, "\"passed\": 11") != NULL;
    premkit_string_free(report);

    if (premkit_run_json("{", &report) != PREMKIT_STATUS_PARSE_ERROR) {
        return 1;
    }
    return ok && infinite && written == 3 ? 0 : 1;
}
