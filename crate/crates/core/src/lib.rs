//! Day-ahead electricity price forecasting that exploits the prices of an
//! exchange settling earlier on the same day.
//!
//! The crate covers ingestion of hourly price files on calendars with
//! clock-change days, six forecasting models (weekly persistence, univariate
//! and bivariate Yule-Walker autoregressions, and three variants using the
//! early-settling prices), a rolling-window backtest with bootstrap error
//! bands, per-hour Diebold-Mariano tests and a synthetic coupled-market
//! generator.

pub mod backtest;
pub mod calendar;
pub mod cli;
pub mod dm;
pub mod error;
pub mod estimation;
pub mod ingest;
pub mod models;
pub mod synth;

pub use calendar::{PartitionScheme, TradingCalendar};
pub use error::{Error, Result};
pub use ingest::{HourlySeries, MarketPair, PairWindow};
pub use models::{DeltaForm, FittedModel, ModelKind, ModelSpec};
