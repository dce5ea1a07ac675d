# coding: utf-8

# # Algebraic entropy
#
# For a submodule L and an endomorphism eta, the trajectory is
# T_n = L + eta(L) + ... + eta^{n-1}(L). The norms i(T_n) form a
# subadditive sequence, and H_i(L, eta) is the limit of i(T_n)/n.
# entroflow computes this limit exactly, by detecting an affine tail on
# formal values of the form c*unit + sum c_q*log q.

# In[1]:

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.entropy import (
    EntropyOptions,
    RingMap,
    entropy_at,
    entropy_lattice_side,
    entropy_of_endo,
    entropy_of_module,
    entropy_of_preradical,
    fekete_detail,
    ring_change_report,
    trajectory,
    trajectory_profile,
)
from entroflow.flows import Flow
from entroflow.invariants import LOG, RANK, invariant
from entroflow.normvalue import NormValue
from entroflow.preradicals import Torsion

# ## The Bernoulli shift
#
# On the direct sum of countably many copies of Z/p, the right shift
# beta moves the first copy along. The trajectory of the first copy
# covers n copies after n steps, so Log(T_n) = n*log p.

# In[2]:

p = 3
S = mc.shift_module(mc.finite_module([p]))
beta = mc.bernoulli_shift(S)
first = mc.submodule(S, [[1]])
print([str(invariant(LOG, trajectory(first, beta, n))) for n in range(1, 7)])
print("H_log(first, beta) =", entropy_at(LOG, first, beta))
print("H_rank(first, beta) =", entropy_at(RANK, first, beta))

# ## Fekete limits
#
# A subadditive sequence converges to inf a_k/k. The detector also
# accepts tails that are affine with period 2. Every returned slope is
# cross-checked against a_k/k.

# In[3]:

print(fekete_detail([NormValue.log(2, n) for n in range(1, 8)]).limit)
print(fekete_detail([NormValue.log(2, min(n, 5)) for n in range(1, 10)]).limit)
res = fekete_detail([NormValue.log(2, c) for c in (1, 2, 2, 3, 3, 4, 4, 5, 5, 6)])
print(res.limit, "period", res.period, "gaps", [round(g, 3) for g in res.gaps])

# ## Trajectory profiles
#
# A profile records every T_n and its norm. The verdict is Stabilized for
# finite modules and AffineSlope when the norms grow linearly.

# In[4]:

prof = trajectory_profile(LOG, first, beta)
print(prof.verdict, "slope", prof.slope, "after", len(prof.values), "terms")
Z12 = mc.finite_module([12])
print(trajectory_profile(LOG, mc.submodule(Z12, [[1]]), mc.matrix_morphism(Z12, Z12, [[5]])).verdict)

# ## Entropy of endomorphisms, modules and preradicals
#
# On shift modules the supremum over finite submodules is taken over
# growing support windows. The result must be the same on the last three
# window sizes. End of a shift module is infinite, so module and
# preradical entropies are taken over a declared family. Here the family
# is {0, id, beta}.

# In[5]:

opts = EntropyOptions(family=bt.shift_family(S))
print("ent(beta) =", entropy_of_endo(LOG, Flow(S, beta)))
print("ent(S) relative to {0, id, beta} =", entropy_of_module(LOG, S, opts))
print("ent_log(tor)|_S =", entropy_of_preradical(LOG, Torsion(), S, opts))
print("ent_rank(tor)|_S =", entropy_of_preradical(RANK, Torsion(), S, opts))
print("same through the lattice:", entropy_lattice_side(LOG, S, Torsion(), opts))
wider = EntropyOptions(family=bt.shift_family(S) + (mc.power(beta, 2),))
print("with beta^2 in the family:", entropy_of_module(LOG, S, wider))

# ## Finite modules have zero entropy
#
# Trajectories in a finite module stabilize, so every entropy is 0.

# In[6]:

M = mc.finite_module([2, 8])
print("ent(M) =", entropy_of_module(LOG, M), "; lattice side:", entropy_lattice_side(LOG, M))

# ## Change of rings
#
# Along t: Z -> Z/p, a Z/p-module becomes a Z-module with the same
# elements. Entropy over Z/p is at most entropy over Z.

# In[7]:

t = RingMap.surjection(p)
Sp = mc.shift_module(mc.finite_module([p], t.target))
rep = ring_change_report(t, Sp, opts=EntropyOptions(family=(mc.bernoulli_shift(Sp),)))
print(f"over Z/{p}: {rep.lhs}   over Z: {rep.rhs}   holds: {rep.holds}")
