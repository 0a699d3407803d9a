"""Levi-Civita calculus on jet-valued tensors.

Index conventions (all arrays in coordinate components):
    gamma[k, i, j]      = Γ^k_ij
    riemann[l, i, j, k] = R^l_ijk with R(∂_i, ∂_j)∂_k = R^l_ijk ∂_l
    ricci[j, k]         = R^i_ijk
Each derivative lowers the jet order by one, so the order of every result tells
how many further derivatives it can still supply.
"""

from ..jets import Jet, jeinsum, jet_inverse


def inverse_metric(g: Jet) -> Jet:
    return jet_inverse(g)


def christoffel_jets(g: Jet, ginv: Jet) -> Jet:
    """Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)."""
    dg = g.gradient()  # dg[a, b, c] = ∂_c g_ab
    first_kind = (
        jeinsum("jli->lij", dg) + jeinsum("ilj->lij", dg) - jeinsum("ijl->lij", dg)
    ) * 0.5
    return jeinsum("kl,lij->kij", ginv, first_kind)


def riemann_jets(gamma: Jet) -> Jet:
    """R^l_ijk = ∂_iΓ^l_jk − ∂_jΓ^l_ik + Γ^l_imΓ^m_jk − Γ^l_jmΓ^m_ik."""
    dgamma = gamma.gradient()  # dgamma[l, j, k, i] = ∂_i Γ^l_jk
    return (
        jeinsum("ljki->lijk", dgamma)
        - jeinsum("likj->lijk", dgamma)
        + jeinsum("lim,mjk->lijk", gamma, gamma)
        - jeinsum("ljm,mik->lijk", gamma, gamma)
    )


def ricci_jets(riemann: Jet) -> Jet:
    return jeinsum("iijk->jk", riemann)


def ricci_operator_jets(ginv: Jet, ricci: Jet) -> Jet:
    return jeinsum("ac,cb->ab", ginv, ricci)


def gradient_jets(u: Jet, ginv: Jet) -> Jet:
    """(grad u)^i = g^{ij} ∂_j u."""
    return jeinsum("ij,j->i", ginv, u.gradient())


def laplacian_jets(u: Jet, ginv: Jet, gamma: Jet) -> Jet:
    """Δu = g^{ij}(∂_i∂_j u − Γ^k_ij ∂_k u)."""
    du = u.gradient()
    hessian = du.gradient()
    return jeinsum("ij,ij->", ginv, hessian) - jeinsum("ij,kij,k->", ginv, gamma, du)


__all__ = [
    "inverse_metric",
    "christoffel_jets",
    "riemann_jets",
    "ricci_jets",
    "ricci_operator_jets",
    "gradient_jets",
    "laplacian_jets",
]
