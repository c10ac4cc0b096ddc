use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::forms::{AlternatingForm, Bicharacter, QuadraticForm};
use crate::qz::Qz;

/// The grading group `A` with its syllepsis `s`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ContextSpec", try_from = "ContextSpec")]
pub struct SyllepticContext {
    a: FinAbGroup,
    s: Bicharacter,
}

impl SyllepticContext {
    pub fn new(a: FinAbGroup, s: Bicharacter) -> Result<Self> {
        if s.left() != &a || s.right() != &a {
            return Err(Error::InvalidForm("syllepsis must pair A with itself".into()));
        }
        Ok(SyllepticContext { a, s })
    }

    /// `A` with the zero syllepsis.
    pub fn untwisted(a: FinAbGroup) -> Self {
        let s = Bicharacter::zero(&a, &a);
        SyllepticContext { a, s }
    }

    /// `A = Z/2 ⊕ Z/2` with `s(a,b) = 1/2` and all other generator values 0.
    pub fn klein() -> Self {
        let a = FinAbGroup::new(vec![2, 2]).expect("valid");
        let s = Bicharacter::on(&a, vec![vec![Qz::ZERO, Qz::HALF], vec![Qz::ZERO, Qz::ZERO]])
            .expect("valid");
        SyllepticContext { a, s }
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn s(&self) -> &Bicharacter {
        &self.s
    }

    pub fn alt(&self) -> AlternatingForm {
        self.s.alt().expect("antisymmetrization is alternating")
    }
}

/// `{"A": "Z2+Z2", "s": [["0","1/2"],["0","0"]]}`
#[derive(Clone, Serialize, Deserialize)]
struct ContextSpec {
    #[serde(rename = "A")]
    a: FinAbGroup,
    s: Vec<Vec<Qz>>,
}

impl From<SyllepticContext> for ContextSpec {
    fn from(c: SyllepticContext) -> Self {
        ContextSpec {
            s: c.s.matrix().to_vec(),
            a: c.a,
        }
    }
}

impl TryFrom<ContextSpec> for SyllepticContext {
    type Error = Error;

    fn try_from(c: ContextSpec) -> Result<Self> {
        let s = Bicharacter::on(&c.a, c.s)?;
        SyllepticContext::new(c.a, s)
    }
}

impl fmt::Debug for SyllepticContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, s={:?})", self.a, self.s.matrix())
    }
}

/// A premetric group `(G, q)` with grading `f: G → A` in a context `(A, s)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ElementSpec", try_from = "ElementSpec")]
pub struct GradedPremetricGroup {
    context: SyllepticContext,
    grading: GroupHom,
    form: QuadraticForm,
}

#[derive(Clone, Serialize, Deserialize)]
struct FormSpec {
    gen: Vec<Qz>,
    #[serde(default)]
    offdiag: Vec<Qz>,
}

/// The element interchange format: context, group, grading matrix (column
/// `j` is the degree of generator `j`) and generator values of `q`.
#[derive(Clone, Serialize, Deserialize)]
struct ElementSpec {
    context: SyllepticContext,
    #[serde(rename = "G")]
    g: FinAbGroup,
    f: Vec<Vec<i64>>,
    q: FormSpec,
}

impl From<GradedPremetricGroup> for ElementSpec {
    fn from(x: GradedPremetricGroup) -> Self {
        ElementSpec {
            g: x.form.group().clone(),
            f: x.grading.matrix().to_vec(),
            q: FormSpec {
                gen: x.form.gen_values().to_vec(),
                offdiag: x.form.offdiag().to_vec(),
            },
            context: x.context,
        }
    }
}

impl TryFrom<ElementSpec> for GradedPremetricGroup {
    type Error = Error;

    fn try_from(e: ElementSpec) -> Result<Self> {
        // an empty matrix is accepted for any grading out of the trivial group
        let f = if e.f.is_empty() && e.g.rank() == 0 {
            vec![Vec::new(); e.context.a().rank()]
        } else {
            e.f
        };
        let grading = GroupHom::new(e.g.clone(), e.context.a().clone(), f)?;
        let form = QuadraticForm::new(e.g, e.q.gen, e.q.offdiag)?;
        GradedPremetricGroup::new(e.context, grading, form)
    }
}

impl GradedPremetricGroup {
    pub fn new(context: SyllepticContext, grading: GroupHom, form: QuadraticForm) -> Result<Self> {
        if grading.target() != context.a() {
            return Err(Error::InvalidHom(format!(
                "grading lands in {} instead of {}",
                grading.target(),
                context.a()
            )));
        }
        if grading.source() != form.group() {
            return Err(Error::InvalidForm("form and grading live on different groups".into()));
        }
        Ok(GradedPremetricGroup {
            context,
            grading,
            form,
        })
    }

    /// The unit: the trivial group.
    pub fn unit(context: &SyllepticContext) -> Self {
        let g = FinAbGroup::trivial();
        GradedPremetricGroup {
            grading: GroupHom::zero(g.clone(), context.a().clone()),
            form: QuadraticForm::zero(&g),
            context: context.clone(),
        }
    }

    /// A trivially graded object.
    pub fn trivially_graded(context: &SyllepticContext, form: QuadraticForm) -> Self {
        GradedPremetricGroup {
            grading: GroupHom::zero(form.group().clone(), context.a().clone()),
            form,
            context: context.clone(),
        }
    }

    pub fn context(&self) -> &SyllepticContext {
        &self.context
    }

    pub fn group(&self) -> &FinAbGroup {
        self.form.group()
    }

    pub fn grading(&self) -> &GroupHom {
        &self.grading
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    /// `G₀ = Ker f`.
    pub fn degree_zero(&self, caps: &Caps) -> Result<Subgroup> {
        self.grading.kernel(caps)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.form.is_nondegenerate()
    }

    pub fn gauss_sum(&self) -> num_complex::Complex64 {
        self.form.gauss_sum()
    }

    /// `s(f x, f y)` as a pairing on `G`.
    fn pulled_s(&self) -> Bicharacter {
        self.context
            .s()
            .pullback(&self.grading, &self.grading)
            .expect("grading lands in A")
    }

    /// `X ⊠ Y` on `G ⊕ H` with `Q(g,h) = q_G(g) + q_H(h) + s(f g, k h)`.
    pub fn twisted_product(&self, other: &GradedPremetricGroup) -> Result<Self> {
        if self.context != other.context {
            return Err(Error::ContextMismatch);
        }
        let g = self.group().direct_sum(other.group());
        let (k1, k2) = (self.group().rank(), other.group().rank());
        let a = self.context.a();
        let mut images: Vec<_> = (0..k1).map(|j| self.grading.column(j)).collect();
        images.extend((0..k2).map(|j| other.grading.column(j)));
        let grading = GroupHom::from_images(g.clone(), a.clone(), &images)?;
        let s = self.context.s();
        let mut gen = self.form.gen_values().to_vec();
        gen.extend_from_slice(other.form.gen_values());
        let mut offdiag = Vec::new();
        let k = k1 + k2;
        for i in 0..k {
            for j in i + 1..k {
                offdiag.push(if j < k1 {
                    self.form.off(i, j)
                } else if i >= k1 {
                    other.form.off(i - k1, j - k1)
                } else {
                    s.eval(&images[i], &images[j])
                });
            }
        }
        let form = QuadraticForm::new(g, gen, offdiag)?;
        GradedPremetricGroup::new(self.context.clone(), grading, form)
    }

    /// `q̃(g) = −q(g) + s(f g, f g)` on the same graded group.
    pub fn s_opposite(&self) -> Self {
        let ps = self.pulled_s();
        let k = self.group().rank();
        let gen = (0..k)
            .map(|i| -self.form.gen_values()[i] + ps.value(i, i))
            .collect();
        let mut offdiag = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                offdiag.push(-self.form.off(i, j) + ps.value(i, j) + ps.value(j, i));
            }
        }
        let form = QuadraticForm::new(self.group().clone(), gen, offdiag)
            .expect("opposite of a well-formed form");
        GradedPremetricGroup {
            context: self.context.clone(),
            grading: self.grading.clone(),
            form,
        }
    }

    /// Unreduced `n`-fold twisted power; `X⁰` is the unit.
    pub fn power(&self, n: usize) -> Result<Self> {
        let mut p = GradedPremetricGroup::unit(&self.context);
        for _ in 0..n {
            p = p.twisted_product(self)?;
        }
        Ok(p)
    }

    /// Restriction of grading and form to `H`, presented on the basis of `H`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        let e = h.embedding();
        GradedPremetricGroup::new(
            self.context.clone(),
            self.grading.compose(&e)?,
            self.form.pullback(&e)?,
        )
    }

    /// Same object with grading and form pulled back along an isomorphism.
    pub fn relabel(&self, iso: &GroupHom) -> Result<Self> {
        GradedPremetricGroup::new(
            self.context.clone(),
            self.grading.compose(iso)?,
            self.form.pullback(iso)?,
        )
    }

    /// Composes the grading with an endomorphism of `A`.
    pub fn regrade(&self, phi: &GroupHom) -> Result<Self> {
        GradedPremetricGroup::new(
            self.context.clone(),
            phi.compose(&self.grading)?,
            self.form.clone(),
        )
    }
}

impl fmt::Debug for GradedPremetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {} by {:?}; ", self.group(), self.context.a(), self.grading.matrix())?;
        write!(f, "q gen {:?} off {:?})", self.form.gen_values(), self.form.offdiag())
    }
}
