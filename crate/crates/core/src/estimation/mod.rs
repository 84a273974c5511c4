//! Yule-Walker estimation: sample autocovariances, the Levinson-Durbin and
//! Whittle recursions, and AIC order selection.

pub mod autocov;
pub mod levinson;
pub mod whittle;

pub use autocov::{
    sample_autocov, sample_autocov_bivariate, Autocovariance, BivariateAutocovariance,
};
pub use levinson::{
    coefficients_are_stationary, levinson_durbin, select_from_autocov, select_order_aic, ArFit,
    LevinsonPath,
};
pub use whittle::{
    select_var_from_autocov, select_var_order_aic, whittle, whittle_scan, VarFit, WhittlePath,
    WhittleStep,
};
