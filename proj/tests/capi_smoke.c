/* Compiled as C: the header must be usable without C++. */
#include "cusp_torsion.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

int main(void) {
  double v = -1;
  EXPECT(cusp_logdet_model(-1.0, &v) == CUSP_OK);
  EXPECT(fabs(v - 2 * log(2.0)) < 1e-15);

  const int witt_broken[] = {1, 1, 1};
  EXPECT(cusp_at_db(2, witt_broken, 3, 0, &v) == CUSP_ERR_PRECONDITION);
  EXPECT(strstr(cusp_last_error(), "degree 1") != NULL);
  EXPECT(cusp_logdet_model(0.5, NULL) == CUSP_ERR_INVALID_ARGUMENT);
  EXPECT(cusp_logdet_model(0.5, &v) == CUSP_OK);
  EXPECT(cusp_last_error()[0] == '\0');

  cusp_complex* c = NULL;
  EXPECT(cusp_complex_from_json("{\"dims\": [1, 1], \"differentials\": [[[2]]]}", &c) == CUSP_OK);
  cusp_torsion_report t;
  EXPECT(cusp_complex_log_torsion(c, &t) == CUSP_OK);
  EXPECT(fabs(t.log_torsion - log(2.0)) < 1e-13);
  int betti[4];
  size_t count = 0;
  EXPECT(cusp_complex_betti(c, betti, 4, &count) == CUSP_OK);
  EXPECT(count == 2 && betti[0] == 0 && betti[1] == 0);
  cusp_complex_free(c);
  EXPECT(cusp_complex_from_json("{nope", &c) == CUSP_ERR_PARSE);
  EXPECT(c == NULL);

  cusp_profile* p = NULL;
  EXPECT(cusp_profile_random(3, 5, 1, &p) == CUSP_OK);
  cusp_assembly_report r;
  EXPECT(cusp_profile_assembly(p, &r) == CUSP_OK);
  EXPECT(fabs(r.at_db + r.at_small + r.harmonic_correction - r.assembly) < 1e-12);
  EXPECT(fabs(r.assembly_orth - r.assembly) < 1e-12);
  char* text = NULL;
  EXPECT(cusp_profile_to_json(p, &text) == CUSP_OK);
  cusp_profile* q = NULL;
  EXPECT(cusp_profile_from_json(text, &q) == CUSP_OK);
  cusp_string_free(text);
  cusp_profile_free(q);
  cusp_profile_free(p);

  double trace = 0;
  EXPECT(cusp_relative_heat_trace(1.0, 1.0, 0.0, 2000, &trace) == CUSP_OK);
  EXPECT(fabs(trace - erf(1.0)) < 1e-3);
  EXPECT(cusp_relative_heat_trace(1.0, 9.0, 10.0, 2000, &trace) == CUSP_ERR_GUARD_RAIL);

  cusp_surface* s = NULL;
  EXPECT(cusp_surface_builtin("symmetric", 1e-3, &s) == CUSP_OK);
  double values[4];
  int modes = 0;
  EXPECT(cusp_neck_spectrum(s, 4, 0.0, -1, values, &modes) == CUSP_OK);
  EXPECT(values[1] > 0 && values[1] < 1e-3);
  EXPECT(cusp_surface_set_eps(s, -1.0) == CUSP_ERR_INVALID_ARGUMENT);
  cusp_surface_free(s);
  EXPECT(cusp_surface_builtin("torus-of-doom", 1e-3, &s) == CUSP_ERR_INVALID_ARGUMENT);

  cusp_space_free(NULL);
  cusp_surface_free(NULL);
  printf("%s, version %s\n", failures ? "FAILED" : "ok", cusp_version());
  return failures ? 1 : 0;
}
