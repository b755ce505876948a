#include <stdio.h>
#include <string.h>

#include "treemaps.h"

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "failed: %s (%s)\n", #cond, tm_last_error()); \
      return 1;                                                   \
    }                                                             \
  } while (0)

int main(void) {
  TmForest *vertex = NULL;
  TmPoly *word = NULL;
  TmPoly *image = NULL;
  char *text = NULL;

  EXPECT(tm_forest_parse("[]", &vertex) == TM_STATUS_OK);
  EXPECT(tm_poly_parse("x y0", 1, &word) == TM_STATUS_OK);
  EXPECT(tm_rtm_apply(vertex, word, false, &image) == TM_STATUS_OK);
  EXPECT(tm_poly_to_string(image, &text) == TM_STATUS_OK);
  EXPECT(strcmp(text, "x y0 y0 - x x y0") == 0);

  double sum_abs = 0.0, bound = 0.0;
  EXPECT(tm_check_kernel(image, 100000, 1e-3, &sum_abs, &bound) == TM_STATUS_OK);
  EXPECT(sum_abs < 1e-3);

  TmForest *bad = NULL;
  EXPECT(tm_forest_parse("[[]", &bad) == TM_STATUS_SYNTAX);
  EXPECT(bad == NULL);
  EXPECT(strstr(tm_last_error(), "offset 3") != NULL);

  tm_string_free(text);
  tm_poly_free(image);
  tm_poly_free(word);
  tm_forest_free(vertex);
  puts("ok");
  return 0;
}
