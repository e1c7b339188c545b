//! Reference implementations the library code is checked against. They
//! share no code with the crate under test.

#![allow(dead_code)]

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

const RC: [u64; 24] = [
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
];
const ROTC: [u32; 24] = [1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44];
const PILN: [usize; 24] = [10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1];

fn keccak_f(st: &mut [u64; 25]) {
    for rc in RC {
        let mut bc = [0u64; 5];
        for i in 0..5 {
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        }
        for i in 0..5 {
            let t = bc[(i + 4) % 5] ^ bc[(i + 1) % 5].rotate_left(1);
            for j in (0..25).step_by(5) {
                st[j + i] ^= t;
            }
        }
        let mut t = st[1];
        for i in 0..24 {
            let j = PILN[i];
            let next = st[j];
            st[j] = t.rotate_left(ROTC[i]);
            t = next;
        }
        for j in (0..25).step_by(5) {
            let row = [st[j], st[j + 1], st[j + 2], st[j + 3], st[j + 4]];
            for i in 0..5 {
                st[j + i] ^= !row[(i + 1) % 5] & row[(i + 2) % 5];
            }
        }
        st[0] ^= rc;
    }
}

/// Original Keccak padding (0x01), not the SHA-3 domain byte.
pub fn keccak256(msg: &[u8]) -> [u8; 32] {
    const RATE: usize = 136;
    let mut st = [0u64; 25];
    let mut padded = msg.to_vec();
    padded.push(0x01);
    while !padded.len().is_multiple_of(RATE) {
        padded.push(0);
    }
    *padded.last_mut().unwrap() |= 0x80;
    for block in padded.chunks(RATE) {
        for (lane, word) in st.iter_mut().zip(block.chunks(8)) {
            *lane ^= u64::from_le_bytes(word.try_into().unwrap());
        }
        keccak_f(&mut st);
    }
    let mut out = [0u8; 32];
    for (chunk, lane) in out.chunks_mut(8).zip(st) {
        chunk.copy_from_slice(&lane.to_le_bytes());
    }
    out
}

pub fn keccak_hex(text: &str) -> String {
    hex::encode(keccak256(text.as_bytes()))
}

const ALPHABET: &[u8] = b"123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

/// Base58check via arbitrary-precision division.
pub fn base58check(payload: &[u8]) -> String {
    let check = Sha256::digest(Sha256::digest(payload));
    let mut full = payload.to_vec();
    full.extend_from_slice(&check[..4]);
    let mut n = BigUint::from_bytes_be(&full);
    let base = BigUint::from(58u32);
    let zero = BigUint::from(0u32);
    let mut digits = Vec::new();
    while n > zero {
        let rem = (&n % &base).to_u32_digits().first().copied().unwrap_or(0);
        digits.push(ALPHABET[rem as usize]);
        n /= &base;
    }
    let zeros = full.iter().take_while(|&&b| b == 0).count();
    digits.extend(std::iter::repeat_n(b'1', zeros));
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

pub fn base58check_decode(text: &str) -> Option<Vec<u8>> {
    let mut n = BigUint::from(0u32);
    for c in text.bytes() {
        let d = ALPHABET.iter().position(|&a| a == c)?;
        n = n * 58u32 + d as u32;
    }
    let zeros = text.bytes().take_while(|&c| c == b'1').count();
    let mut full = vec![0u8; zeros];
    if n > BigUint::from(0u32) {
        full.extend(n.to_bytes_be());
    }
    let (payload, check) = full.split_at(full.len().checked_sub(4)?);
    let expect = Sha256::digest(Sha256::digest(payload));
    (check == &expect[..4]).then(|| payload.to_vec())
}
