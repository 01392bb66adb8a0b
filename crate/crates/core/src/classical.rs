//! Perfect classical secret sharing for the twirl key.
//!
//! Two backends: Shamir `(q, n)` threshold sharing over `Z_P`, and a
//! replicated additive scheme realising any monotone access structure from
//! its minimal authorized sets.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infogroup::SchemeTriplet;
use crate::primefield::{next_prime_above, Prime};
use crate::subset::Subset;
use crate::twirl::{sample_twirl, TwirlPlan};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum SchemeKind {
    Threshold { q: usize, n: usize },
    Monotone { n: usize, minimal_sets: Vec<Subset> },
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::Threshold { q, n } => write!(f, "Shamir ({q},{n})"),
            SchemeKind::Monotone { minimal_sets, .. } => {
                let sets: Vec<String> = minimal_sets.iter().map(|s| s.to_string()).collect();
                write!(f, "monotone over minimal sets {}", sets.join(", "))
            }
        }
    }
}

/// Shares of a key, one digit list per player (1-based labels).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalShareSet {
    #[serde(flatten)]
    pub kind: SchemeKind,
    #[serde(rename = "P")]
    pub modulus: Prime,
    /// Modulus of the original key digits when they were lifted into `Z_P`.
    pub key_modulus: Option<u32>,
    pub key_length: usize,
    pub shares: BTreeMap<usize, Vec<u32>>,
}

impl ClassicalShareSet {
    pub fn num_players(&self) -> usize {
        match &self.kind {
            SchemeKind::Threshold { n, .. } | SchemeKind::Monotone { n, .. } => *n,
        }
    }

    /// Whether `players` is authorized under this scheme.
    pub fn is_authorized(&self, players: Subset) -> bool {
        match &self.kind {
            SchemeKind::Threshold { q, .. } => players.len() >= *q,
            SchemeKind::Monotone { minimal_sets, .. } => minimal_sets.iter().any(|m| m.is_subset_of(players)),
        }
    }

    /// Reconstructs the key from the shares held by `players`.
    pub fn reconstruct(&self, players: Subset) -> Result<Vec<u32>> {
        let held: Vec<(usize, Vec<u32>)> = players
            .players()
            .into_iter()
            .map(|p| {
                self.shares
                    .get(&p)
                    .cloned()
                    .map(|s| (p, s))
                    .ok_or_else(|| Error::input(format!("no share for player {p}")))
            })
            .collect::<Result<_>>()?;
        let key = match &self.kind {
            SchemeKind::Threshold { q, .. } => shamir_reconstruct(&held, *q, self.modulus)?,
            SchemeKind::Monotone { minimal_sets, .. } => {
                monotone_reconstruct(&held, minimal_sets, self.key_length, self.modulus)?
            }
        };
        match self.key_modulus {
            Some(d) if key.iter().any(|&v| v >= d) => {
                Err(Error::Invariant(format!("reconstructed digits exceed the key modulus {d}")))
            }
            _ => Ok(key),
        }
    }
}

/// `f(x)` for `f = secret + Σ coeffs[i] x^{i+1}` over `Z_P`.
pub fn shamir_evaluate(secret: u32, coeffs: &[u32], x: u32, p: Prime) -> u32 {
    let mut acc = 0;
    for &c in coeffs.iter().rev() {
        acc = p.add(p.mul(acc, x), c);
    }
    p.add(p.mul(acc, x), secret)
}

pub fn shamir_share(key: &[u32], q: usize, n: usize, p: Prime, seed: u64) -> Result<ClassicalShareSet> {
    if p.get() as usize <= n {
        return Err(Error::input(format!("P = {p} must exceed the number of players n = {n}")));
    }
    if q == 0 || q > n {
        return Err(Error::input(format!("threshold q = {q} must satisfy 1 <= q <= n = {n}")));
    }
    if let Some(bad) = key.iter().find(|&&v| v >= p.get()) {
        return Err(Error::input(format!("key digit {bad} is not in Z_{p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shares: BTreeMap<usize, Vec<u32>> = (1..=n).map(|i| (i, Vec::with_capacity(key.len()))).collect();
    for &digit in key {
        let coeffs: Vec<u32> = (0..q - 1).map(|_| rng.gen_range(0..p.get())).collect();
        for (&player, digits) in shares.iter_mut() {
            digits.push(shamir_evaluate(digit, &coeffs, player as u32, p));
        }
    }
    Ok(ClassicalShareSet {
        kind: SchemeKind::Threshold { q, n },
        modulus: p,
        key_modulus: None,
        key_length: key.len(),
        shares,
    })
}

/// Lagrange interpolation at zero. `shares` pairs a player label (the
/// evaluation point) with its digits.
pub fn shamir_reconstruct(shares: &[(usize, Vec<u32>)], q: usize, p: Prime) -> Result<Vec<u32>> {
    let mut points: Vec<u32> = shares.iter().map(|(x, _)| (*x as u64 % p.get() as u64) as u32).collect();
    points.sort_unstable();
    points.dedup();
    if points.len() != shares.len() {
        return Err(Error::input("share points must be distinct and nonzero mod P"));
    }
    if points.contains(&0) {
        return Err(Error::input("share point 0 would reveal the secret directly"));
    }
    if shares.len() < q {
        return Err(Error::InsufficientShares { needed: q, got: shares.len() });
    }
    let len = shares[0].1.len();
    if shares.iter().any(|(_, s)| s.len() != len) {
        return Err(Error::input("shares carry different numbers of digits"));
    }
    let xs: Vec<u32> = shares.iter().map(|(x, _)| (*x as u64 % p.get() as u64) as u32).collect();
    // λ_i = Π_{j≠i} x_j / (x_j − x_i)
    let weights: Vec<u32> = (0..xs.len())
        .map(|i| {
            xs.iter().enumerate().filter(|&(j, _)| j != i).fold(1, |acc, (_, &xj)| {
                p.mul(acc, p.mul(xj, p.inv(p.sub(xj, xs[i]))))
            })
        })
        .collect();
    Ok((0..len)
        .map(|digit| {
            shares.iter().zip(&weights).fold(0, |acc, ((_, s), &w)| p.add(acc, p.mul(w, s[digit])))
        })
        .collect())
}

fn check_antichain(minimal: &[Subset], n: usize) -> Result<()> {
    if minimal.is_empty() {
        return Err(Error::input("the minimal authorized family is empty"));
    }
    for (i, a) in minimal.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::input("the empty set cannot be a minimal authorized set"));
        }
        if !a.is_subset_of(Subset::full(n)) {
            return Err(Error::input(format!("{a} mentions players beyond n = {n}")));
        }
        for (j, b) in minimal.iter().enumerate() {
            if i != j && a.is_subset_of(*b) {
                return Err(Error::input(format!("{a} and {b} do not form an antichain")));
            }
        }
    }
    Ok(())
}

/// Replicated additive sharing. Each player's digit list is the concatenation,
/// over the minimal sets containing that player (in the given order), of its
/// `key.len()` additive parts.
pub fn monotone_share(key: &[u32], minimal: &[Subset], n: usize, p: Prime, seed: u64) -> Result<ClassicalShareSet> {
    check_antichain(minimal, n)?;
    if let Some(bad) = key.iter().find(|&&v| v >= p.get()) {
        return Err(Error::input(format!("key digit {bad} is not in Z_{p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shares: BTreeMap<usize, Vec<u32>> = (1..=n).map(|i| (i, Vec::new())).collect();
    for m in minimal {
        let members = m.players();
        let mut parts: Vec<Vec<u32>> = vec![Vec::with_capacity(key.len()); members.len()];
        for &digit in key {
            let mut sum = 0;
            for part in parts.iter_mut().take(members.len() - 1) {
                let v = rng.gen_range(0..p.get());
                sum = p.add(sum, v);
                part.push(v);
            }
            parts[members.len() - 1].push(p.sub(digit, sum));
        }
        for (player, part) in members.iter().zip(parts) {
            shares.get_mut(player).expect("player in range").extend(part);
        }
    }
    Ok(ClassicalShareSet {
        kind: SchemeKind::Monotone { n, minimal_sets: minimal.to_vec() },
        modulus: p,
        key_modulus: None,
        key_length: key.len(),
        shares,
    })
}

/// Sums the parts of the first minimal set fully covered by `shares`.
pub fn monotone_reconstruct(
    shares: &[(usize, Vec<u32>)],
    minimal: &[Subset],
    key_length: usize,
    p: Prime,
) -> Result<Vec<u32>> {
    let held: BTreeMap<usize, &Vec<u32>> = shares.iter().map(|(i, s)| (*i, s)).collect();
    let holders = held.keys().fold(Subset::EMPTY, |acc, &pl| acc.with(pl - 1));
    let Some((mi, m)) = minimal.iter().enumerate().find(|(_, m)| m.is_subset_of(holders)) else {
        let needed = minimal.iter().map(|m| m.len()).min().unwrap_or(0);
        return Err(Error::InsufficientShares { needed, got: shares.len() });
    };
    let mut key = vec![0u32; key_length];
    for player in m.players() {
        // position of this minimal set among those the player belongs to
        let slot = minimal[..mi].iter().filter(|s| s.contains(player - 1)).count();
        let digits = held[&player];
        let part = digits
            .get(slot * key_length..(slot + 1) * key_length)
            .ok_or_else(|| Error::input(format!("share of player {player} is too short")))?;
        for (k, &v) in key.iter_mut().zip(part) {
            *k = p.add(*k, v);
        }
    }
    Ok(key)
}

/// A sampled twirl key together with its shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyTransport {
    pub key: Vec<u32>,
    pub shares: ClassicalShareSet,
}

/// Scheme and modulus used to share a twirl key over `Z_D` among the
/// players of `triplet`: Shamir over the smallest prime above `max(D, n)`
/// when `A` is a threshold family, replicated additive sharing over `Z_D`
/// on the minimal authorized sets otherwise.
pub fn scheme_for(triplet: &SchemeTriplet, d: Prime) -> (SchemeKind, Prime) {
    let n = triplet.n;
    match triplet.threshold() {
        Some(q) => (SchemeKind::Threshold { q, n }, next_prime_above(d.get().max(n as u32) as u64)),
        None => (SchemeKind::Monotone { n, minimal_sets: triplet.minimal_authorized() }, d),
    }
}

/// Samples a twirl key and shares it with the scheme chosen by [`scheme_for`].
pub fn key_transport(plan: &TwirlPlan, triplet: &SchemeTriplet, seed: u64) -> Result<KeyTransport> {
    if plan.is_empty() {
        return Err(Error::input("the twirl plan is empty; there is no key to share"));
    }
    let d = plan.intermediate_group.modulus();
    let (key, _) = sample_twirl(plan, seed)?;
    // Independent stream for the share randomness.
    let share_seed = seed ^ 0x5eed_5eed_5eed_5eed;
    let mut shares = match scheme_for(triplet, d) {
        (SchemeKind::Threshold { q, n }, p) => shamir_share(&key, q, n, p, share_seed)?,
        (SchemeKind::Monotone { n, minimal_sets }, p) => monotone_share(&key, &minimal_sets, n, p, share_seed)?,
    };
    if shares.modulus != d {
        shares.key_modulus = Some(d.get());
    }
    Ok(KeyTransport { key, shares })
}
