#include <stdio.h>
#include "quiver_si.h"

/* Exercises every declared entry point; compiled and linked against the
   static library by tests/header.rs. */
int main(void) {
    QsiQuiver *q = NULL;
    const char *json = "{\"vertices\":[\"1\",\"2\"],\"arrows\":"
                       "[{\"tail\":\"1\",\"head\":\"2\"},{\"tail\":\"1\",\"head\":\"2\"}]}";
    if (qsi_quiver_parse(json, &q) != QSI_STATUS_OK) return 1;
    if (qsi_quiver_vertex_count(q) != 2) return 2;

    int64_t a[2] = {1, 0}, b[2] = {0, 1}, ones[2] = {1, 1}, sigma[2] = {1, -1};
    int64_t ext = -1, hom = -1, euler = 0;
    if (qsi_ext_generic(q, a, b, 2, &ext) != QSI_STATUS_OK || ext != 2) return 3;
    if (qsi_hom_generic(q, a, b, 2, &hom) != QSI_STATUS_OK || hom != 0) return 4;
    if (qsi_euler_form(q, a, b, 2, &euler) != QSI_STATUS_OK || euler != -2) return 5;

    bool emb = false, semi = false, stable = false;
    if (qsi_embeds(q, b, ones, 2, &emb) != QSI_STATUS_OK || !emb) return 6;
    if (qsi_stability(q, ones, sigma, 2, &semi, &stable) != QSI_STATUS_OK || !semi || !stable) return 7;

    uint64_t dim = 0, c = 0;
    if (qsi_si_dim(q, ones, sigma, 2, &dim) != QSI_STATUS_OK || dim != 2) return 8;
    if (qsi_circ(q, a, a, 2, &c) != QSI_STATUS_PRECONDITION) return 9;
    if (qsi_last_error() == NULL) return 10;

    int64_t lam[3] = {2, 1, 0}, nu[3] = {3, 2, 1};
    uint64_t lr = 0;
    if (qsi_lr_coefficient(lam, lam, nu, 3, &lr) != QSI_STATUS_OK || lr != 2) return 11;

    char *text = NULL;
    if (qsi_quiver_to_json(q, &text) != QSI_STATUS_OK) return 12;
    qsi_string_free(text);

    const char *argv[] = {"lr", "--lam", "[2,1,0]", "--mu", "same", "--nu", "[3,2,1]"};
    int32_t code = -1;
    if (qsi_run(argv, 7, &code, &text) != QSI_STATUS_OK || code != 0) return 13;
    puts(text);
    qsi_string_free(text);

    QsiQuiver *t = NULL;
    if (qsi_quiver_star(3, 3, 2, &t) != QSI_STATUS_OK || qsi_quiver_vertex_count(t) != 6) return 14;
    qsi_quiver_free(t);
    qsi_quiver_free(q);
    return 0;
}
