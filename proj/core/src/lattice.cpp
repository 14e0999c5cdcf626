#include "pqw/lattice.h"

#include <cmath>

#include "pqw/error.h"

namespace pqw {

LatticeParams default_params() { return LatticeParams{}; }

static uint16_t euclid_mod(int64_t v, uint32_t q) {
    int64_t r = v % int64_t(q);
    if (r < 0) r += q;
    return uint16_t(r);
}

LatticePoint hash_to_lattice_point(const Bytes& eta, const LatticeParams& p) {
    if (eta.size() != 32) {
        throw Error(ErrorCode::ParameterError, "digest must be 32 bytes");
    }
    LatticePoint out;
    for (int j = 0; j < p.m; j++) {
        uint32_t word = (uint32_t(eta[2 * j]) << 8) | eta[2 * j + 1];
        out.coeffs[j] = uint16_t(word % p.q);
    }
    return out;
}

LatticePoint hash_to_lattice_point(const Digest32& eta, const LatticeParams& p) {
    return hash_to_lattice_point(Bytes(eta.begin(), eta.end()), p);
}

LatticeVec mask_vector(const SignedVec& delta, const Bits256& omega,
                       const LatticeParams& p) {
    LatticeVec mask;
    for (int j = 0; j < p.m; j++) {
        uint32_t word = uint32_t(omega[2 * j]) | (uint32_t(omega[2 * j + 1]) << 8);
        mask[j] = euclid_mod(int64_t(word) + delta[j], p.q);
    }
    return mask;
}

BlindState sample_blind_state(Rng& rng, const LatticeParams& p) {
    BlindState st;
    for (int j = 0; j < p.m; j++) {
        st.delta1[j] = sample_gaussian_int(rng, double(p.sigma_int));
    }
    rng.fill(st.omega1.data(), st.omega1.size());
    st.b = mask_vector(st.delta1, st.omega1, p);
    return st;
}

ServerPadSource sample_pad_source(Rng& rng, const LatticeParams& p) {
    ServerPadSource src;
    for (int j = 0; j < p.m; j++) {
        src.delta2[j] = sample_gaussian_int(rng, double(p.sigma_int));
    }
    rng.fill(src.omega2.data(), src.omega2.size());
    return src;
}

BlindedPoint blind_point(const LatticePoint& rho, const BlindState& st,
                         const LatticeParams& p) {
    BlindedPoint out;
    out.stage = BlindStage::ClientBlinded;
    for (int j = 0; j < p.m; j++) {
        out.tau[j] = euclid_mod(int64_t(rho.coeffs[j]) + st.b[j], p.q);
    }
    return out;
}

BlindedPoint pad_point(const BlindedPoint& tau1, const ServerPadSource& src,
                       const LatticeParams& p) {
    if (tau1.stage != BlindStage::ClientBlinded) {
        throw Error(ErrorCode::ParameterError, "pad_point expects a client-blinded point");
    }
    LatticeVec pad = mask_vector(src.delta2, src.omega2, p);
    BlindedPoint out;
    out.stage = BlindStage::ServerPadded;
    for (int j = 0; j < p.m; j++) {
        out.tau[j] = euclid_mod(int64_t(tau1.tau[j]) + pad[j], p.q);
    }
    return out;
}

LatticePoint unblind_point(const BlindedPoint& tau2, const BlindState& st,
                           const LatticeParams& p) {
    if (tau2.stage != BlindStage::ServerPadded) {
        throw Error(ErrorCode::ParameterError, "unblind_point expects a server-padded point");
    }
    LatticePoint out;
    for (int j = 0; j < p.m; j++) {
        out.coeffs[j] = euclid_mod(int64_t(tau2.tau[j]) - st.b[j], p.q);
    }
    return out;
}

EuclidResult extended_euclid(long long a, long long n) {
    if (a <= 0 || n <= 0) {
        throw Error(ErrorCode::ParameterError, "extended_euclid needs positive inputs");
    }
    long long r0 = a, r1 = n;
    long long x0 = 1, x1 = 0;
    long long y0 = 0, y1 = 1;
    while (r1 != 0) {
        long long t = r0 / r1;
        r0 -= t * r1;
        std::swap(r0, r1);
        x0 -= t * x1;
        std::swap(x0, x1);
        y0 -= t * y1;
        std::swap(y0, y1);
    }
    return {r0, x0, y0};
}

long long mod_inverse(long long a, long long n) {
    EuclidResult e = extended_euclid(a, n);
    if (e.g != 1) {
        throw Error(ErrorCode::NoInverse, "no modular inverse exists");
    }
    long long inv = e.x % n;
    if (inv < 0) inv += n;
    return inv;
}

double normal_quantile(double u) {
    if (!(u > 0.0) || !(u < 1.0)) {
        throw Error(ErrorCode::ParameterError, "quantile argument must be in (0, 1)");
    }
    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,
        1.9715909503065514427e3,  1.3731693765509461125e4,
        4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e1,
        6.8718700749205790830e2,  5.3941960214247511077e3,
        2.1213794301586595867e4,  3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0,
        5.76949722146069140550e0, 3.64784832476320460504e0,
        1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                      2.05319162663775882187e0,
        1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0,
        1.78482653991729133580e0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                      5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    auto horner = [](const double* k, double t) {
        return ((((((k[7] * t + k[6]) * t + k[5]) * t + k[4]) * t + k[3]) * t +
                 k[2]) * t + k[1]) * t + k[0];
    };

    double r = u - 0.5;
    if (std::fabs(r) <= 0.425) {
        double t = 0.180625 - r * r;
        return r * horner(a, t) / horner(b, t);
    }
    double t = (r < 0.0) ? u : 1.0 - u;
    t = std::sqrt(-std::log(t));
    double x;
    if (t <= 5.0) {
        t -= 1.6;
        x = horner(c, t) / horner(d, t);
    } else {
        t -= 5.0;
        x = horner(e, t) / horner(f, t);
    }
    return (r < 0.0) ? -x : x;
}

int32_t sample_gaussian_int(Rng& rng, double stddev) {
    double u = (double(rng.next_u64()) + 0.5) * 0x1p-64;
    double x = stddev * normal_quantile(u);
    return int32_t(std::floor(x + 0.5));
}

}  // namespace pqw
