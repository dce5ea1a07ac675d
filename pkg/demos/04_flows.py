# coding: utf-8

# # Flows: modules with an endomorphism
#
# A flow is a pair (M, eta). A flow morphism f: (M, eta) -> (K, mu)
# satisfies f . eta = mu . f. Each preradical sigma induces a preradical
# sigma-bar on flows, (M, eta) -> (sigma(M), eta restricted). Going back
# through the functor E(M) = (M, id) and the forgetful functor U gives
# sigma again.

# In[1]:

from entroflow import modules as mc
from entroflow.flows import (
    E,
    Flow,
    alpha_flow,
    canonical_subflow,
    induce_flow_preradical,
    is_flow_morphism,
    project_flow_preradical,
)
from entroflow.parser import parse_preradical
from entroflow.preradicals import Torsion

Z4 = mc.finite_module([4])
times2 = mc.matrix_morphism(Z4, Z4, [[2]])
times3 = mc.matrix_morphism(Z4, Z4, [[3]])
ident = mc.identity_morphism(Z4)

# ## Flow morphisms
#
# The identity of Z/4 is not a flow morphism from (Z/4, x2) to
# (Z/4, id): the two composites differ on the generator 1.

# In[2]:

print("id: (Z/4, x2) -> (Z/4, x2)?", is_flow_morphism(ident, Flow(Z4, times2), Flow(Z4, times2)))
print("id: (Z/4, x2) -> (Z/4, id)?", is_flow_morphism(ident, Flow(Z4, times2), E(Z4)))

# ## Subobjects
#
# An injective flow morphism is represented by its image together with
# the restricted endomorphism. Here {0, 2} sits inside (Z/4, x3).

# In[3]:

half = mc.submodule(Z4, [[2]])
H, inc = mc.submodule_as_module(half)
sf = canonical_subflow(inc, Flow(H, mc.restrict_endomorphism(times3, half)), Flow(Z4, times3))
print("subflow:", sf.sub, "with restricted endomorphism", sf.restricted.matrix)

# ## Induced preradicals
#
# Applying tor to (Z/4 + Z, diag(3, 1)) gives the Z/4 summand with
# multiplication by 3.

# In[4]:

M = mc.finite_module([4, 0])
x = Flow(M, mc.matrix_morphism(M, M, [[3, 0], [0, 1]]))
t = induce_flow_preradical(Torsion(), x)
print("tor-bar:", t.sub, "endo", t.restricted.matrix)

# ## Equivariant alpha
#
# Only equivariant maps contribute to alpha-bar. From (Z/4, x3) to
# (Z/4, id) those maps are generated by x -> 2x, and 2 * {0, 2} = 0.

# In[5]:

print("alpha-bar(<2>) at (Z/4, id):", alpha_flow(Flow(Z4, times3), half, E(Z4)).sub)
print("alpha-bar(<2>) at (Z/4, x3):", alpha_flow(Flow(Z4, times3), half, Flow(Z4, times3)).sub)

# ## The round trip U . sigma-bar . E = sigma

# In[6]:

for text in ("tor", "ptor(2) : ptor(2)", "id . ptor(3) | zero"):
    e = parse_preradical(text)
    N = mc.finite_module([12, 0])
    print(f"{text:22} {project_flow_preradical(e, N)!s:14} == {e(N)}")
