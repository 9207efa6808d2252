#include <stdio.h>

#include "monopole_dirac.h"

int main(void) {
    MdParams p = {1.0, 1.0, 1.0, -1.0, 1.0, 2.0};
    MdState q = {1, 1, -1, 1};
    MdSpectrum r;
    if (md_relativistic_energy(&p, &q, &r) != MD_STATUS_OK) {
        return 1;
    }
    printf("energy %.17g\n", r.energy);
    printf("z0 %.17g\n", r.z0);

    MdSettingRow rows[8];
    if (md_settings_table(&p, 0, 1, rows) != MD_STATUS_OK) {
        return 1;
    }
    printf("setting4 %.17g\n", rows[3].spectrum.energy);

    MdSpinor *h = NULL;
    if (md_spinor_new(&p, &q, &h) != MD_STATUS_OK) {
        return 1;
    }
    MdSpinorValue v;
    md_spinor_eval(h, 0.0, 1.5, 0.0, &v);
    printf("upper %.17g\n", v.upper_re);
    md_spinor_free(h);

    MdState bad = {0, 2, 1, 1};
    MdStatus st = md_relativistic_energy(&p, &bad, &r);
    printf("status %d %s\n", (int)st, md_status_name(st));
    printf("message %s\n", md_last_error_message());
    return 0;
}
