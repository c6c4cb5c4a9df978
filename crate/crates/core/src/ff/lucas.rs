/// `C(d, i) mod p` as the Lucas product over base-`p` digits.
///
/// Zero whenever some digit of `i` exceeds the matching digit of `d` (in particular
/// when `i > d`).
pub fn binom_mod_p(mut d: u64, mut i: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while i > 0 {
        let (dd, ii) = (d % p64, i % p64);
        if ii > dd {
            return 0;
        }
        acc = acc * small_binom(dd, ii, p64) % p64;
        d /= p64;
        i /= p64;
    }
    acc as u32
}

/// `C(n, k) mod p` for `k <= n < p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for j in 0..k {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
