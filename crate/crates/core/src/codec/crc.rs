//! CRC-16 with generator `x^16 + x^12 + x^5 + 1`, zero initial register,
//! no reflection and no final inversion.

use alloc::vec::Vec;

pub const CRC_BITS: usize = 16;
const POLY: u16 = 0x1021;

/// Remainder of `bits * x^16` modulo the generator, bits MSB first.
pub fn crc16(bits: &[u8]) -> u16 {
    let mut reg = 0u16;
    for &b in bits {
        let top = ((reg >> 15) as u8) ^ (b & 1);
        reg <<= 1;
        if top == 1 {
            reg ^= POLY;
        }
    }
    reg
}

/// CRC of a byte string, each byte taken MSB first.
pub fn crc16_bytes(bytes: &[u8]) -> u16 {
    let bits: Vec<u8> = bytes
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1))
        .collect();
    crc16(&bits)
}

/// `payload` followed by its 16 parity bits.
pub fn crc16_attach(payload: &[u8]) -> Vec<u8> {
    let crc = crc16(payload);
    let mut out = Vec::with_capacity(payload.len() + CRC_BITS);
    out.extend_from_slice(payload);
    out.extend((0..CRC_BITS).rev().map(|i| ((crc >> i) & 1) as u8));
    out
}

/// True when the last 16 bits are the CRC of the rest.
pub fn crc16_check(block: &[u8]) -> bool {
    block.len() >= CRC_BITS && crc16(block) == 0
}
