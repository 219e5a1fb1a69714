// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISEE_MODEL_HPP
#define RISEE_MODEL_HPP

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace risee {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kFeasibilityTol = 1e-9;

double db_to_linear(double db);
double linear_to_db(double linear);

/// Wraps an angle into [0, 2pi).
double wrap_phase(double angle);

/// Physical constants of the link. Path loss and noise PSD stay in dB/dBm here;
/// evaluate() converts them to linear units once per call.
struct SystemParams {
    double bandwidth_hz = 5e6;
    double path_loss_db = 110.0;
    double noise_psd_dbm_per_hz = -174.0;
    double amp_inefficiency = 1.0;
    double static_power_w = 30.0;
    double max_tx_power_w = 20.0;
    double tx_exposure_budget = 0.2125;
    double rx_exposure_budget = 0.2125;

    /// sigma^2 = N0 * B in watts.
    [[nodiscard]] double noise_power_w() const;
    [[nodiscard]] double path_loss_linear() const;
    /// 1 / (delta * sigma^2): multiplies p * |w^H G Phi H q|^2 to give the SNR.
    [[nodiscard]] double snr_scale() const;

    /// Throws InputError when an invariant is broken.
    void validate() const;
};

/// Per-antenna absorption weights (c_n at the transmitter, d_n at the receiver).
struct ExposureCoefficients {
    RVector tx;
    RVector rx;

    static ExposureCoefficients isotropic(Eigen::Index n_tx, double c, Eigen::Index n_rx, double d);

    [[nodiscard]] bool is_isotropic() const;
    void validate(Eigen::Index n_tx, Eigen::Index n_rx) const;
};

/// h: transmitter -> RIS (N x N_T); g: RIS -> receiver (N_R x N).
struct ChannelPair {
    CMatrix h;
    CMatrix g;

    [[nodiscard]] Eigen::Index ris_elements() const { return h.rows(); }
    [[nodiscard]] Eigen::Index tx_antennas() const { return h.cols(); }
    [[nodiscard]] Eigen::Index rx_antennas() const { return g.rows(); }

    void validate() const;
};

struct LinkConfig {
    RVector phases;
    CVector beamformer;
    CVector combiner;
    double tx_power_w = 0.0;
};

struct EvalResult {
    double ee_bits_per_joule = 0.0;
    double rate_bps = 0.0;
    double effective_gain = 0.0;
    double tx_exposure = 0.0;
    double rx_exposure = 0.0;
};

/// G * diag(e^{j phi}) * H, the N_R x N_T end-to-end channel.
CMatrix cascaded_channel(const ChannelPair& channels, const RVector& phases);

/// w^H G Phi H q.
cdouble link_response(const ChannelPair& channels, const LinkConfig& cfg);

/// sum_n coeffs_n |x_n|
double exposure(const RVector& coeffs, const CVector& x);

EvalResult evaluate(const SystemParams& params, const ChannelPair& channels,
                    const ExposureCoefficients& coeffs, const LinkConfig& cfg);

/// Which constraint families a configuration is checked against. The
/// EMF-unaware baselines keep only the unit-norm and power constraints.
enum class ConstraintSet { emf_aware, emf_unaware };

struct Violation {
    std::string constraint;
    double slack = 0.0; // negative: amount by which the constraint is exceeded
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;

    explicit operator bool() const { return feasible; }
};

FeasibilityReport is_feasible(const SystemParams& params, const ExposureCoefficients& coeffs,
                              const LinkConfig& cfg,
                              ConstraintSet set = ConstraintSet::emf_aware);

} // namespace risee

#endif
