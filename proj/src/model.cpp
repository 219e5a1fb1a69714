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

#include "risee/model.hpp"
#include "risee/error.hpp"

#include <cmath>
#include <sstream>

namespace risee {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double wrap_phase(double angle)
{
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0)
        wrapped += kTwoPi;
    // fmod of a tiny negative angle can round up to exactly 2pi
    if (wrapped >= kTwoPi)
        wrapped = 0.0;
    return wrapped;
}

double SystemParams::noise_power_w() const
{
    return db_to_linear(noise_psd_dbm_per_hz - 30.0) * bandwidth_hz;
}

double SystemParams::path_loss_linear() const { return db_to_linear(path_loss_db); }

double SystemParams::snr_scale() const { return 1.0 / (path_loss_linear() * noise_power_w()); }

void SystemParams::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw InputError(std::string("SystemParams: ") + what);
    };
    require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
    require(std::isfinite(path_loss_db), "path_loss_db must be finite");
    require(std::isfinite(noise_psd_dbm_per_hz), "noise_psd_dbm_per_hz must be finite");
    require(std::isfinite(amp_inefficiency) && amp_inefficiency >= 1.0, "amp_inefficiency must be >= 1");
    require(std::isfinite(static_power_w) && static_power_w > 0.0, "static_power_w must be > 0");
    require(std::isfinite(max_tx_power_w) && max_tx_power_w > 0.0, "max_tx_power_w must be > 0");
    require(std::isfinite(tx_exposure_budget) && tx_exposure_budget >= 0.0, "tx_exposure_budget must be >= 0");
    require(std::isfinite(rx_exposure_budget) && rx_exposure_budget >= 0.0, "rx_exposure_budget must be >= 0");
    const double sigma2 = noise_power_w();
    require(std::isfinite(sigma2) && sigma2 > 0.0, "derived noise power must be finite and > 0");
    require(std::isfinite(snr_scale()) && snr_scale() > 0.0, "path loss times noise power must be finite and > 0");
}

ExposureCoefficients ExposureCoefficients::isotropic(Eigen::Index n_tx, double c, Eigen::Index n_rx, double d)
{
    return {RVector::Constant(n_tx, c), RVector::Constant(n_rx, d)};
}

bool ExposureCoefficients::is_isotropic() const
{
    auto constant = [](const RVector& v) { return v.size() == 0 || (v.array() == v(0)).all(); };
    return constant(tx) && constant(rx);
}

void ExposureCoefficients::validate(Eigen::Index n_tx, Eigen::Index n_rx) const
{
    if (tx.size() != n_tx || rx.size() != n_rx) {
        std::ostringstream msg;
        msg << "ExposureCoefficients: expected " << n_tx << " tx and " << n_rx << " rx coefficients, got "
            << tx.size() << " and " << rx.size();
        throw InputError(msg.str());
    }
    auto ok = [](const RVector& v) { return v.allFinite() && (v.array() >= 0.0).all(); };
    if (!ok(tx) || !ok(rx))
        throw InputError("ExposureCoefficients: coefficients must be finite and non-negative");
}

void ChannelPair::validate() const
{
    if (h.rows() < 1 || h.cols() < 1 || g.rows() < 1 || g.cols() < 1)
        throw InputError("ChannelPair: all dimensions must be >= 1");
    if (g.cols() != h.rows()) {
        std::ostringstream msg;
        msg << "ChannelPair: H has " << h.rows() << " RIS rows but G has " << g.cols() << " RIS columns";
        throw InputError(msg.str());
    }
    if (!h.allFinite() || !g.allFinite())
        throw InputError("ChannelPair: non-finite channel entry");
}

CMatrix cascaded_channel(const ChannelPair& channels, const RVector& phases)
{
    const CVector reflection = (cdouble(0.0, 1.0) * phases.cast<cdouble>()).array().exp().matrix();
    return channels.g * reflection.asDiagonal() * channels.h;
}

cdouble link_response(const ChannelPair& channels, const LinkConfig& cfg)
{
    const CVector reflection = (cdouble(0.0, 1.0) * cfg.phases.cast<cdouble>()).array().exp().matrix();
    const CVector at_ris = reflection.cwiseProduct(channels.h * cfg.beamformer);
    return cfg.combiner.dot(channels.g * at_ris); // dot() conjugates its left operand
}

double exposure(const RVector& coeffs, const CVector& x) { return coeffs.dot(x.cwiseAbs()); }

namespace {

void check_dimensions(const ChannelPair& channels, const ExposureCoefficients& coeffs, const LinkConfig& cfg)
{
    channels.validate();
    coeffs.validate(channels.tx_antennas(), channels.rx_antennas());
    if (cfg.phases.size() != channels.ris_elements() || cfg.beamformer.size() != channels.tx_antennas()
        || cfg.combiner.size() != channels.rx_antennas()) {
        std::ostringstream msg;
        msg << "LinkConfig: expected (N, N_T, N_R) = (" << channels.ris_elements() << ", "
            << channels.tx_antennas() << ", " << channels.rx_antennas() << "), got (" << cfg.phases.size()
            << ", " << cfg.beamformer.size() << ", " << cfg.combiner.size() << ")";
        throw InputError(msg.str());
    }
}

} // namespace

EvalResult evaluate(const SystemParams& params, const ChannelPair& channels, const ExposureCoefficients& coeffs,
                    const LinkConfig& cfg)
{
    check_dimensions(channels, coeffs, cfg);

    EvalResult r;
    r.effective_gain = std::norm(link_response(channels, cfg));
    r.rate_bps = params.bandwidth_hz * std::log2(1.0 + cfg.tx_power_w * r.effective_gain * params.snr_scale());
    r.ee_bits_per_joule = r.rate_bps / (params.amp_inefficiency * cfg.tx_power_w + params.static_power_w);
    r.tx_exposure = exposure(coeffs.tx, cfg.beamformer);
    r.rx_exposure = exposure(coeffs.rx, cfg.combiner);
    return r;
}

FeasibilityReport is_feasible(const SystemParams& params, const ExposureCoefficients& coeffs, const LinkConfig& cfg,
                              ConstraintSet set)
{
    FeasibilityReport report;
    auto check = [&](const char* name, double slack) {
        if (slack < -kFeasibilityTol) {
            report.feasible = false;
            report.violations.push_back({name, slack});
        }
    };

    check("tx_power_nonnegative", cfg.tx_power_w);
    check("tx_power_max", params.max_tx_power_w - cfg.tx_power_w);
    if (set == ConstraintSet::emf_aware) {
        check("tx_exposure", params.tx_exposure_budget - exposure(coeffs.tx, cfg.beamformer));
        check("rx_exposure", params.rx_exposure_budget - exposure(coeffs.rx, cfg.combiner));
    }
    check("beamformer_norm", 1.0 - cfg.beamformer.squaredNorm());
    check("combiner_norm", 1.0 - cfg.combiner.squaredNorm());
    return report;
}

} // namespace risee
