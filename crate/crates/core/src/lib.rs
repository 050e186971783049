//! Desk-scale pipeline for recognizing application traffic types directly
//! from modulated radio IQ time series: synthesize HDLC-framed QPSK signals,
//! apply channel impairments, slice into sequence tensors, and train LSTM
//! models for classification and next-window generation.

pub mod framing;
pub mod scalar;
pub mod trace;

pub use scalar::Scalar;
