#pragma once

namespace twinbeam {

struct PumpSpec {
    double wavelength = 0.3975;  // um
    double duration = 280.0;     // FWHM, fs
    double waist = 100.0;        // um
    double amplitude = 1.0;

    double Omega_p() const;  // rad/fs
    double q_p() const { return 1.0 / waist; }
    void validate() const;
};

struct FilterSpec {
    double qx_min = 0, qx_max = 0;  // rad/um
    double qy_max = 0;
    double Omega_max = 0;           // rad/fs

    void validate() const;
};

}  // namespace twinbeam
