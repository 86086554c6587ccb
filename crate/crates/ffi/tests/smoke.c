#include <stdio.h>
#include "selfsim_green.h"

int main(void) {
    SsgCell *cell = NULL;
    char *json = NULL;
    if (ssg_cell_builtin("diamond", &cell) != SSG_STATUS_OK) return 1;
    if (ssg_green_series_json(cell, 4, &json) != SSG_STATUS_OK) return 2;
    printf("%s\n", json);
    ssg_string_free(json);
    ssg_cell_free(cell);
    if (ssg_cell_parse("vertices 2\n", &cell) == SSG_STATUS_OK) return 3;
    fprintf(stderr, "%s\n", ssg_last_error());
    return 0;
}
