#include <math.h>
#include <stdio.h>
#include "spmoments.h"

int main(void) {
    SpmExpSums *s = NULL;
    if (spm_expsums_new(5, &s) != SPM_STATUS_OK) return 10;
    double re = 0, im = 0;
    if (spm_kloosterman(s, 1, 1, &re, &im) != SPM_STATUS_OK) return 11;
    spm_expsums_free(s);
    if (fabs(re - 0.3819660112501051) > 1e-12 || fabs(im) > 1e-12) return 12;

    SpmWeight *w = NULL;
    if (spm_weight_new(-1.0, 1.0, &w) != SPM_STATUS_INVALID_ARGUMENT || w != NULL) return 13;
    char buf[128];
    if (spm_last_error(buf, sizeof buf) == 0) return 14;

    SpmDataset *d = NULL;
    if (spm_dataset_load(NULL, &d) != SPM_STATUS_OK) return 15;
    double lam = 0;
    if (spm_dataset_lambda(d, 0, 1, &lam) != SPM_STATUS_OK || fabs(lam - 1.0) > 1e-12) return 16;
    spm_dataset_free(d);
    printf("%s\n", spm_version());
    return 0;
}
