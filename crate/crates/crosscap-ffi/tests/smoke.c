#include <stdio.h>
#include <string.h>
#include "crosscap.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, crosscap_last_error() ? crosscap_last_error() : ""); return 1; } } while (0)

int main(void) {
    CrosscapScheme *p = NULL;
    CHECK(crosscap_scheme_parse("1 -6 5 -4 3 -2", &p) == CROSSCAP_STATUS_OK);
    size_t g = 0;
    CHECK(crosscap_scheme_crosscap_number(p, &g) == CROSSCAP_STATUS_OK && g == 3);

    CrosscapDrawing *d = NULL;
    bool exceptional = true;
    CHECK(crosscap_perfect_drawing(p, &d, &exceptional) == CROSSCAP_STATUS_OK);
    CHECK(!exceptional && d != NULL);
    bool perfect = false;
    CHECK(crosscap_drawing_is_perfect(d, p, &perfect) == CROSSCAP_STATUS_OK && perfect);

    char *svg = NULL;
    CHECK(crosscap_drawing_to_svg(d, &svg) == CROSSCAP_STATUS_OK);
    CHECK(strncmp(svg, "<svg", 4) == 0);
    crosscap_string_free(svg);

    CrosscapScheme *bad = NULL;
    CHECK(crosscap_scheme_parse("1 1", &bad) == CROSSCAP_STATUS_PARSE);
    CHECK(bad == NULL && crosscap_last_error() != NULL);

    crosscap_drawing_free(d);
    crosscap_scheme_free(p);
    puts("ok");
    return 0;
}
