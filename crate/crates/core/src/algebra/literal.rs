//! Parser for cyclotomic literals such as `1/2*z5^3 - 2`.

use num::{BigInt, BigRational, Integer, One, Zero};

use super::cyclo::{lcm, Cyclo};
use super::AlgebraError;

struct Term {
    coeff: BigRational,
    power: Option<(u32, i64)>,
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn err(&self, msg: &str) -> AlgebraError {
        let at = self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.src.len());
        AlgebraError::Parse { input: self.src.to_string(), position: at, message: msg.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            None
        } else {
            s.parse().ok()
        }
    }

    fn power(&mut self) -> Result<(u32, i64), AlgebraError> {
        if !self.eat('z') {
            return Err(self.err("expected 'z'"));
        }
        let n = self.digits().ok_or_else(|| self.err("expected conductor after 'z'"))?;
        let n: u32 = n.try_into().map_err(|_| self.err("conductor too large"))?;
        if n == 0 {
            return Err(self.err("conductor must be positive"));
        }
        let k = if self.eat('^') {
            let k = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            k.try_into().map_err(|_| self.err("exponent too large"))?
        } else {
            1
        };
        Ok((n, k))
    }

    fn term(&mut self) -> Result<Term, AlgebraError> {
        match self.peek() {
            Some('z') => Ok(Term { coeff: BigRational::one(), power: Some(self.power()?) }),
            Some(c) if c.is_ascii_digit() => {
                let p = self.digits().unwrap();
                let q = if self.eat('/') {
                    let q = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                    if q.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q
                } else {
                    BigInt::one()
                };
                let coeff = BigRational::new(p, q);
                let power = if self.eat('*') { Some(self.power()?) } else { None };
                Ok(Term { coeff, power })
            }
            _ => Err(self.err("expected a number or 'z'")),
        }
    }
}

pub(crate) fn parse(src: &str, cap: u32) -> Result<Cyclo, AlgebraError> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return Err(lx.err("empty literal"));
    }
    let mut terms: Vec<(bool, Term)> = Vec::new();
    let mut neg = if lx.eat('-') {
        true
    } else {
        lx.eat('+');
        false
    };
    loop {
        let t = lx.term()?;
        terms.push((neg, t));
        match lx.peek() {
            None => break,
            Some('+') => {
                lx.pos += 1;
                neg = false;
            }
            Some('-') => {
                lx.pos += 1;
                neg = true;
            }
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
    }
    let mut conductor: u64 = 1;
    for (_, t) in &terms {
        if let Some((n, _)) = t.power {
            conductor = lcm(conductor as u32, n);
            if conductor > cap as u64 {
                return Err(AlgebraError::UnsupportedField { conductor, cap });
            }
        }
    }
    let m = conductor as u32;
    let mut acc = Cyclo::zero().promote_capped(m, cap.max(m))?;
    for (neg, t) in terms {
        let mut v = Cyclo::from_rational(&t.coeff);
        if let Some((n, k)) = t.power {
            let step = (m / n) as i64;
            v = &v * &Cyclo::zeta_pow(m, (k * step).mod_floor(&(m as i64)));
        }
        acc = if neg { &acc - &v } else { &acc + &v };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let a: Cyclo = "1/2*z5^3 - 2".parse().unwrap();
        assert_eq!(a.conductor(), 5);
        assert_eq!(a.to_string(), "1/2*z5^3 - 2");
        assert_eq!("z3".parse::<Cyclo>().unwrap(), Cyclo::zeta(3));
        assert_eq!("-1".parse::<Cyclo>().unwrap(), Cyclo::from_int(-1));
        assert_eq!(" z4 ^ 2 ".parse::<Cyclo>().unwrap(), Cyclo::from_int(-1));
        assert_eq!("z5^5".parse::<Cyclo>().unwrap(), Cyclo::one());
    }

    #[test]
    fn printing_reduces() {
        let a: Cyclo = "1 + z3 + z3^2".parse().unwrap();
        assert_eq!(a.to_string(), "0");
        let b: Cyclo = "z3^2".parse().unwrap();
        assert_eq!(b.to_string(), "-z3 - 1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Cyclo>().is_err());
        assert!("1/0".parse::<Cyclo>().is_err());
        assert!("z".parse::<Cyclo>().is_err());
        assert!("2**z3".parse::<Cyclo>().is_err());
        assert!("x5".parse::<Cyclo>().is_err());
        assert!(matches!(
            "z121".parse::<Cyclo>(),
            Err(AlgebraError::UnsupportedField { .. })
        ));
    }
}
