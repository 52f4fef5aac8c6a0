//! The seven-symbol alphabet the index is built over.
//!
//! Symbols are stored by rank, so comparing codes compares symbols:
//! terminator < separator < A < C < G < N < T.

use crate::error::{Error, Result};

/// Number of distinct symbols, terminator and separator included.
pub const SIGMA: usize = 7;

pub const TERMINATOR: u8 = 0;
pub const SEPARATOR: u8 = 1;

/// Printable form of each code, in code order.
pub const SYMBOLS: [u8; SIGMA] = *b"$#ACGNT";

/// Code for a printable symbol (`$`, `#` or one of `ACGNT`).
#[inline]
pub fn encode(byte: u8) -> Option<u8> {
    match byte {
        b'$' => Some(0),
        b'#' => Some(1),
        b'A' => Some(2),
        b'C' => Some(3),
        b'G' => Some(4),
        b'N' => Some(5),
        b'T' => Some(6),
        _ => None,
    }
}

/// Code for a base symbol. Terminator and separator are rejected because
/// patterns never contain them.
#[inline]
pub fn encode_base(byte: u8) -> Result<u8> {
    match encode(byte) {
        Some(code) if code > SEPARATOR => Ok(code),
        _ => Err(Error::InvalidSymbol(byte as char)),
    }
}

#[inline]
pub fn decode(code: u8) -> u8 {
    SYMBOLS[code as usize]
}

/// Uppercases a base and maps anything outside `ACGT` to `N`.
#[inline]
pub fn normalize_base(byte: u8) -> u8 {
    match byte.to_ascii_uppercase() {
        b @ (b'A' | b'C' | b'G' | b'T') => b,
        _ => b'N',
    }
}

pub fn normalize(bases: &mut [u8]) {
    for b in bases.iter_mut() {
        *b = normalize_base(*b);
    }
}
