# coding: utf-8

# # Submodule lattices and normed semilattices
#
# Every finite module M has a finite modular lattice L(M) of
# submodules. An endomorphism acts on it by taking images, and the
# finite-norm part of L(M) is a join-semilattice whose norm is an invariant
# (log of the order, or rank).

# In[1]:

from entroflow import modules as mc
from entroflow.invariants import LOG, RANK
from entroflow.lattice import enumerate_submodules, lattice_morphism, normed_semilattice, semilattice_map

# ## Counting submodules
#
# Z/p + Z/p has p + 3 subgroups: the zero subgroup, the whole group and
# p + 1 lines.

# In[2]:

for p in (2, 3, 5):
    lat = enumerate_submodules(mc.finite_module([p, p]))
    print(f"|L(Z/{p} + Z/{p})| = {len(lat)}")

# ## Joins, meets and the modular law
#
# The lattice stores canonical submodules, so joins and meets are plain
# table lookups after the first call.

# In[3]:

M = mc.finite_module([2, 8])
L = enumerate_submodules(M)
a, b, c = L[1], L[3], L[len(L) - 1]
c = L.join(a, c)
print(len(L), "submodules of", M)
print("a v (b ^ c) =", L.join(a, L.meet(b, c)))
print("(a v b) ^ c =", L.meet(L.join(a, b), c))

# ## The lattice map of an endomorphism
#
# Doubling on Z/4 sends the whole group to {0, 2} and {0, 2} to 0.

# In[4]:

Z4 = mc.finite_module([4])
X = lattice_morphism(mc.matrix_morphism(Z4, Z4, [[2]]))
for i, n in enumerate(X.source):
    print(f"X({n}) = {X.source[X.apply_index(i)]}")

# ## Normed semilattices
#
# With the log norm, the semilattice of Z/4 has norms 0, log 2 and
# 2*log 2. For Z with the rank norm, every nonzero subgroup has norm 1.
# The free generators are bounded by 3.

# In[5]:

s = normed_semilattice(Z4, LOG)
print([str(s.norm(n)) for n in s])
r = normed_semilattice(mc.finite_module([0]), RANK, bound=3)
print([(str(n), str(r.norm(n))) for n in r])

# ## Contractive maps
#
# Every induced semilattice map can only lower the norm. Here the norm
# goes from 2*log 2 to log 2.

# In[6]:

Z2 = mc.finite_module([2])
f = semilattice_map(mc.matrix_morphism(Z4, Z2, [[1]]), LOG)
print("norm before:", s.norm(mc.whole(Z4)), " after:", normed_semilattice(Z2, LOG).norm(f(mc.whole(Z4))))
