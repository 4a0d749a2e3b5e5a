#pragma once

#include <string>

namespace twinbeam {

// n^2 = A + B / (lambda^2 - C) - D lambda^2, lambda in um
struct Sellmeier {
    double A = 0, B = 0, C = 0, D = 0;
    double n(double lambda_um) const;
};

struct CrystalSpec {
    std::string name = "BBO-Eimerl87";
    double length = 2000.0;      // um
    double cut_angle = 0.0;      // rad
    Sellmeier ordinary;
    Sellmeier extraordinary;
    double lambda_min = 0.22;    // um
    double lambda_max = 1.06;

    void validate() const;
    static CrystalSpec bbo_eimerl87(double length_um, double cut_angle_rad);
};

struct QVec {
    double x = 0, y = 0;
};

struct DispersionCoeffs {
    double k0 = 0;    // rad/um
    double k0p = 0;   // fs/um
    double k0pp = 0;  // fs^2/um
    double kp = 0;
    double kpp = 0;   // pump group delay, fs/um
    double step = 0;  // finite-difference step actually used, rad/fs
};

// Ordinary subharmonic around omega0 = omega_p / 2 and extraordinary pump around omega_p.
class Dispersion {
public:
    Dispersion(CrystalSpec crystal, double pump_wavelength_um);

    const CrystalSpec& crystal() const { return crystal_; }
    double omega0() const { return omega_p_ / 2.0; }
    double omega_p() const { return omega_p_; }

    double n_o(double omega) const;
    double n_e(double omega) const;
    double n_z(double omega) const;

    // ordinary wave-number |k| at omega0 + Omega
    double k(double Omega) const;
    double k_z(QVec q, double Omega) const;
    // extraordinary pump, Omega measured from omega_p
    double k_pz(QVec q, double Omega) const;

private:
    double index(const Sellmeier& s, double omega) const;
    CrystalSpec crystal_;
    double omega_p_;
};

DispersionCoeffs taylor_coefficients(const Dispersion& d, double h0 = 1e-3);

}  // namespace twinbeam
