//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use omball::realization::realize;
use omball::{Arrangement, CovectorSet, Hyperplane, Sign, SignVector};

use num_rational::BigRational;

pub fn arrangement(dim: usize, rows: &[(&str, &[i64])]) -> Arrangement {
    let hs = rows
        .iter()
        .map(|(label, nums)| {
            let q: Vec<BigRational> = nums.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            Hyperplane {
                label: label.to_string(),
                normal: q[..dim].to_vec(),
                offset: q[dim].clone(),
            }
        })
        .collect();
    Arrangement::new(dim, hs).unwrap()
}

pub fn triangle_om() -> CovectorSet {
    realize(&arrangement(2, &[("x", &[1, 0, 0]), ("y", &[0, 1, 0]), ("s", &[1, 1, 1])])).unwrap()
}

pub fn line_om() -> CovectorSet {
    realize(&arrangement(1, &[("a", &[1, 0]), ("b", &[1, 1])])).unwrap()
}

/// Witness sets computed straight from the definitions, sign by sign.
#[derive(Debug, PartialEq, Eq)]
pub struct Naive {
    pub zero_missing: bool,
    pub l1: BTreeSet<String>,
    pub l2: BTreeSet<(String, String)>,
    pub l3: BTreeSet<(String, String, usize)>,
}

pub fn naive(vs: &[Vec<char>]) -> Naive {
    let set: BTreeSet<&Vec<char>> = vs.iter().collect();
    let n = vs.first().map_or(0, Vec::len);
    let s = |v: &Vec<char>| v.iter().collect::<String>();
    let neg = |v: &Vec<char>| -> Vec<char> {
        v.iter()
            .map(|c| match c {
                '+' => '-',
                '-' => '+',
                _ => '0',
            })
            .collect()
    };
    let comp = |x: &Vec<char>, y: &Vec<char>| -> Vec<char> {
        x.iter().zip(y).map(|(a, b)| if *a == '0' { *b } else { *a }).collect()
    };
    let mut out = Naive {
        zero_missing: !set.contains(&vec!['0'; n]),
        l1: BTreeSet::new(),
        l2: BTreeSet::new(),
        l3: BTreeSet::new(),
    };
    for x in vs {
        if !set.contains(&neg(x)) {
            out.l1.insert(s(x));
        }
        for y in vs {
            if !set.contains(&comp(x, y)) {
                out.l2.insert((s(x), s(y)));
            }
        }
    }
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            for e in 0..n {
                let separated = (x[e] == '+' && y[e] == '-') || (x[e] == '-' && y[e] == '+');
                if !separated {
                    continue;
                }
                let w = comp(x, y);
                let found = vs.iter().any(|z| {
                    z[e] == '0'
                        && (0..n).all(|f| {
                            let sep_f = (x[f] == '+' && y[f] == '-') || (x[f] == '-' && y[f] == '+');
                            sep_f || z[f] == w[f]
                        })
                });
                if !found {
                    let (a, b) = if s(x) < s(y) { (s(x), s(y)) } else { (s(y), s(x)) };
                    out.l3.insert((a, b, e));
                }
            }
        }
    }
    out
}

/// Run the verifier on a mutated set and compare with the naive witnesses.
pub fn check_mutation(name: &str, om: &CovectorSet, vs: &[Vec<char>]) -> Result<(), String> {
    let ground = om.ground().clone();
    let svs: Vec<SignVector> = vs
        .iter()
        .map(|v| {
            let signs: Vec<Sign> = v.iter().map(|&c| Sign::from_char(c).unwrap()).collect();
            SignVector::from_signs(&signs).unwrap()
        })
        .collect();
    let mutated = CovectorSet::new(ground, svs).map_err(|e| e.to_string())?;
    let r = mutated.verify_covector_axioms();
    let expected = naive(vs);
    if r.all_ok() {
        return Err(format!("{name}: mutation went undetected"));
    }
    if r.missing_zero != expected.zero_missing {
        return Err(format!("{name}: L0"));
    }
    if r.l0_ok != !expected.zero_missing {
        return Err(format!("{name}: L0 flag"));
    }
    let l1: BTreeSet<String> = r.l1_witnesses.iter().map(ToString::to_string).collect();
    if l1 != expected.l1 {
        return Err(format!("{name}: L1 witnesses"));
    }
    let l2: BTreeSet<(String, String)> = r.l2_witnesses.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    if l2 != expected.l2 {
        return Err(format!("{name}: L2 witnesses"));
    }
    let l3: BTreeSet<(String, String, usize)> = r
        .l3_witnesses
        .iter()
        .map(|(x, y, e)| {
            let (a, b) = (x.to_string(), y.to_string());
            if a < b { (a, b, *e) } else { (b, a, *e) }
        })
        .collect();
    if l3 != expected.l3 {
        return Err(format!("{name}: L3 witnesses"));
    }
    if (r.l1_ok, r.l2_ok, r.l3_ok) != (expected.l1.is_empty(), expected.l2.is_empty(), expected.l3.is_empty()) {
        return Err(format!("{name}: flags disagree with witnesses"));
    }
    Ok(())
}

pub fn chars(om: &CovectorSet) -> Vec<Vec<char>> {
    om.iter().map(|x| x.to_string().chars().collect()).collect()
}

fn flip(c: char) -> char {
    match c {
        '+' => '-',
        '-' => '+',
        c => c,
    }
}

/// The ten mutations, applied to the realized triangle and line sets.
pub fn mutations() -> Vec<(&'static str, CovectorSet, Vec<Vec<char>>)> {
    let t = triangle_om();
    let l = line_om();
    let base = chars(&t);
    let tope = |om: &CovectorSet| -> Vec<char> { om.topes()[0].to_string().chars().collect() };
    let rank1 = |om: &CovectorSet| -> Vec<char> { om.atoms()[0].to_string().chars().collect() };
    let without = |vs: &[Vec<char>], drop: &[Vec<char>]| -> Vec<Vec<char>> {
        vs.iter().filter(|v| !drop.contains(v)).cloned().collect()
    };
    let mut out = Vec::new();

    let zero = vec!['0'; base[0].len()];
    out.push(("delete the zero vector", t.clone(), without(&base, &[zero])));

    out.push(("delete one tope", t.clone(), without(&base, &[tope(&t)])));

    out.push(("delete one vertex", t.clone(), without(&base, &[rank1(&t)])));

    let mut flipped = tope(&t);
    flipped[0] = flip(flipped[0]);
    let mut vs = without(&base, &[tope(&t)]);
    if !vs.contains(&flipped) {
        vs.push(flipped);
    }
    out.push(("flip one sign of a tope", t.clone(), vs));

    let edge: Vec<char> = t
        .iter()
        .find(|x| x.zero_set().len() == 2)
        .unwrap()
        .to_string()
        .chars()
        .collect();
    let pos = edge.iter().position(|&c| c != '0').unwrap();
    let mut e2 = edge.clone();
    e2[pos] = flip(e2[pos]);
    let mut vs = without(&base, std::slice::from_ref(&edge));
    if !vs.contains(&e2) {
        vs.push(e2);
    }
    out.push(("flip one sign of an edge", t.clone(), vs));

    let present: BTreeSet<Vec<char>> = base.iter().cloned().collect();
    let extra: Vec<char> = SignVector::all_of_len(base[0].len())
        .map(|x| x.to_string().chars().collect::<Vec<char>>())
        .find(|v| !present.contains(v))
        .expect("the triangle does not realize every sign vector");
    let mut vs = base.clone();
    vs.push(extra);
    out.push(("insert a foreign sign vector", t.clone(), vs));

    let x = tope(&t);
    let nx: Vec<char> = x.iter().map(|&c| flip(c)).collect();
    out.push(("delete a tope and its opposite", t.clone(), without(&base, &[x.clone(), nx])));

    let vs: Vec<Vec<char>> = {
        let mut zeroed = tope(&t);
        zeroed[1] = '0';
        zeroed[2] = '0';
        let mut vs = without(&base, &[tope(&t)]);
        if !vs.contains(&zeroed) {
            vs.push(zeroed);
        }
        vs
    };
    out.push(("zero two coordinates of a tope", t.clone(), vs));

    let lb = chars(&l);
    let l_tope = tope(&l);
    out.push(("line: delete one tope", l.clone(), without(&lb, &[l_tope])));

    let l_region: Vec<char> = l
        .iter()
        .find(|x| x.zero_set().len() == 1 && x.support().len() == 2)
        .unwrap()
        .to_string()
        .chars()
        .collect();
    let mut lv = l_region.clone();
    let p = lv.iter().position(|&c| c != '0').unwrap();
    lv[p] = flip(lv[p]);
    let mut vs = without(&lb, &[l_region]);
    if !vs.contains(&lv) {
        vs.push(lv);
    }
    out.push(("line: flip a sign of an edge", l.clone(), vs));
    out
}

