# coding: utf-8

# # Preradicals as expressions
#
# A preradical picks a submodule sigma(M) of every module M, and every
# morphism respects the choice. entroflow represents preradicals as
# small expression trees. The builtins are zero, id, tor and ptor(p),
# plus alpha/omega built from a pair N <= M. Four operations combine
# them:
#
# * meet `&`
# * join `|`
# * product `.`
# * coproduct `:`

# In[1]:

import random

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.parser import parse_preradical
from entroflow.preradicals import (
    Alpha,
    Omega,
    PTorsion,
    Torsion,
    check_naturality,
    compare_preradicals,
    eval_preradical,
)

# ## Evaluating builtins

# In[2]:

Z9 = mc.finite_module([9])
sub = eval_preradical(PTorsion(3), Z9)
print("ptor(3)(Z/9) =", [x.coords for x in mc.elements(Z9) if x in sub])
M = mc.finite_module([4, 0])
print("tor(Z/4 + Z) =", eval_preradical(Torsion(), M))

# ## alpha and omega
#
# alpha(M, N) sends K to the sum of f(N) over all f: M -> K.
# omega(M, N) sends K to the intersection of f^-1(N) over all f: K -> M.
# Both are computed from generators of the Hom group.

# In[3]:

Z2, Z4 = mc.finite_module([2]), mc.finite_module([4])
print("alpha(Z/2, Z/2)(Z/4) =", eval_preradical(Alpha(Z2, mc.whole(Z2)), Z4))
print("omega(Z/2, 0)(Z/4) =", eval_preradical(Omega(Z2, mc.zero_submodule(Z2)), Z4))

# ## The grammar
#
# Precedence from tightest to loosest binding is `.`, `&`, `|`, `:`.
# All four operators are left associative. The printer adds only the
# parentheses that are needed.

# In[4]:

for text in ("ptor(2) | ptor(3)", "tor . (zero : id)", "(zero : id) : tor", "zero : (id : tor)"):
    e = parse_preradical(text)
    print(f"{text:20} printed back as {e}")
print(repr(parse_preradical("tor . (zero : id)")))

# ## The four-term chain
#
# On any module, product <= meet <= join <= coproduct.

# In[5]:

s, t = parse_preradical("ptor(2)"), parse_preradical("ptor(2) | ptor(3)")
M = mc.finite_module([4, 24])
for label, e in (("product", s * t), ("meet", s & t), ("join", s | t), ("coproduct", s.coproduct(t))):
    print(f"{label:10} {e!s:28} order {mc.cardinality(eval_preradical(e, M))}")

# ## Naturality and order on a battery
#
# check_naturality tests f(sigma(M)) <= sigma(M') for every morphism in a
# seeded battery. Any assignment can be tested, not just builtins. The
# assignment below picks {0, 2} in Z/4 and 0 everywhere else. It fails on
# the map Z/4 -> Z/8, x -> 2x.

# In[6]:

battery = bt.morphism_battery(random.Random(0), 50)
print("tor natural on 50 morphisms:", check_naturality(Torsion(), battery).passed)


def special(m):
    return mc.submodule(Z4, [[2]]) if m == Z4 else mc.zero_submodule(m)


bad = check_naturality(special, [mc.matrix_morphism(Z4, mc.finite_module([8]), [[2]])])
print("special assignment violations:", [(str(v.source), str(v.target), v.witness) for v in bad.violations])

mods = [bt.random_fg_module(random.Random(i)) for i in range(12)]
print("ptor(2) vs tor:", compare_preradicals(PTorsion(2), Torsion(), mods).verdict, "(on battery)")
print("ptor(2) vs ptor(3):", compare_preradicals(PTorsion(2), PTorsion(3), mods).verdict, "(on battery)")
