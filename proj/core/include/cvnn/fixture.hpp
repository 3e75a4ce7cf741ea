#pragma once

#include <vector>

#include "cvnn/model.hpp"

namespace cvnn::fixture {

/// Bundled two-neuron reference network with constant asynchronous delays
/// (1, 2; 3, 4), inhibitory diagonal weights, and mixed bipolar/logistic
/// activations. The published study this scenario reproduces reports the
/// comparison-matrix eigenvalues, M-matrix verdicts and equilibrium below.
NetworkSpec two_neuron_network();

/// Same network with the delays replaced by their sinusoidal time-varying
/// counterparts 1+sin t, 2+cos t, 3-sin t, 4-cos t.
NetworkSpec two_neuron_network_timevarying();

/// The five initial-value cases, constant on the initial segment.
std::vector<VecC> initial_cases();

/// The alternate external input used by the input-sensitivity run.
VecC alternate_input();

/// Reference values reported for this scenario.
Vec reported_equilibrium();            // ordering (z1R, z1I, z2R, z2I)
Vec reported_eigs_base();              // eigenvalues of D - A F - B G
Vec reported_eigs_sharpened();         // eigenvalues after adding the diagonal credit

}  // namespace cvnn::fixture
