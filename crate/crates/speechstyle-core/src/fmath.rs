//! Float math shims so the crate builds both with `std` and with `libm`.

#![allow(dead_code)]

#[cfg(feature = "std")]
mod imp {
    #[inline]
    pub fn sqrt(x: f32) -> f32 {
        x.sqrt()
    }
    #[inline]
    pub fn ln(x: f32) -> f32 {
        x.ln()
    }
    #[inline]
    pub fn log10(x: f32) -> f32 {
        x.log10()
    }
    #[inline]
    pub fn exp(x: f32) -> f32 {
        x.exp()
    }
    #[inline]
    pub fn sin(x: f32) -> f32 {
        x.sin()
    }
    #[inline]
    pub fn cos(x: f32) -> f32 {
        x.cos()
    }
    #[inline]
    pub fn powf(x: f32, y: f32) -> f32 {
        x.powf(y)
    }
    #[inline]
    pub fn floor(x: f32) -> f32 {
        x.floor()
    }
    #[inline]
    pub fn round(x: f32) -> f32 {
        x.round()
    }
    #[inline]
    pub fn abs(x: f32) -> f32 {
        x.abs()
    }
    #[inline]
    pub fn sqrt64(x: f64) -> f64 {
        x.sqrt()
    }
    #[inline]
    pub fn ln64(x: f64) -> f64 {
        x.ln()
    }
    #[inline]
    pub fn sin64(x: f64) -> f64 {
        x.sin()
    }
    #[inline]
    pub fn cos64(x: f64) -> f64 {
        x.cos()
    }
    #[inline]
    pub fn ceil(x: f32) -> f32 {
        x.ceil()
    }
    #[inline]
    pub fn floor64(x: f64) -> f64 {
        x.floor()
    }
    #[inline]
    pub fn ceil64(x: f64) -> f64 {
        x.ceil()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    #[inline]
    pub fn sqrt(x: f32) -> f32 {
        libm::sqrtf(x)
    }
    #[inline]
    pub fn ln(x: f32) -> f32 {
        libm::logf(x)
    }
    #[inline]
    pub fn log10(x: f32) -> f32 {
        libm::log10f(x)
    }
    #[inline]
    pub fn exp(x: f32) -> f32 {
        libm::expf(x)
    }
    #[inline]
    pub fn sin(x: f32) -> f32 {
        libm::sinf(x)
    }
    #[inline]
    pub fn cos(x: f32) -> f32 {
        libm::cosf(x)
    }
    #[inline]
    pub fn powf(x: f32, y: f32) -> f32 {
        libm::powf(x, y)
    }
    #[inline]
    pub fn floor(x: f32) -> f32 {
        libm::floorf(x)
    }
    #[inline]
    pub fn round(x: f32) -> f32 {
        libm::roundf(x)
    }
    #[inline]
    pub fn abs(x: f32) -> f32 {
        libm::fabsf(x)
    }
    #[inline]
    pub fn sqrt64(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline]
    pub fn ln64(x: f64) -> f64 {
        libm::log(x)
    }
    #[inline]
    pub fn sin64(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline]
    pub fn cos64(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline]
    pub fn ceil(x: f32) -> f32 {
        libm::ceilf(x)
    }
    #[inline]
    pub fn floor64(x: f64) -> f64 {
        libm::floor(x)
    }
    #[inline]
    pub fn ceil64(x: f64) -> f64 {
        libm::ceil(x)
    }
}

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("speechstyle-core needs either the `std` or the `libm` feature");

pub(crate) use imp::*;
