//! Multiple information `I(X₁; …; X_N)`: the information shared by every
//! single variable about the tuple of all of them.

use crate::distribution::JointDistribution;
use crate::error::Result;
use crate::lattice::Antichain;
use crate::pid::{shared_info_with, Optimum, SearchConfig};

/// Multiple information of the sources of `d`, in bits. The target of `d` is
/// ignored.
pub fn multiple_information(d: &JointDistribution) -> Result<f64> {
    Ok(multiple_information_with(d, &SearchConfig::default())?.value)
}

/// [`multiple_information`] with search settings, returning the minimizing
/// descriptor over the joint outcomes.
pub fn multiple_information_with(d: &JointDistribution, config: &SearchConfig) -> Result<Optimum> {
    let joint = d.with_joint_target();
    shared_info_with(&joint, &Antichain::singletons(d.n_sources()), config)
}
