# coding: utf-8

# # Exact finitely generated abelian groups
#
# Every module in entroflow is stored by its invariant factors
# `d_1 | d_2 | ... | d_k`, where a factor `0` stands for a copy of Z.
# Morphisms are integer matrices in the column convention, and
# submodules are canonical row-Hermite lattices. Equality is therefore
# structural: two submodules are equal exactly when they have the same
# elements.

# In[1]:

from entroflow import modules as mc
from entroflow.linalg import smith

# ## Presenting a module
#
# Z/4 + Z/6 is not in canonical form. Smith normal form rewrites it as
# Z/2 + Z/12.

# In[2]:

N = mc.present_module(mc.ZZ, [[4, 0], [0, 6]])
print("Z/4 + Z/6 is", N, "with invariant factors", N.factors)
U, D, V, _ = smith([[4, 0], [0, 6]])
print("Smith form of diag(4, 6):", D)

# ## Submodules, images and kernels
#
# Below we use M = Z/2 + Z/4 and the endomorphism that doubles the
# second coordinate.

# In[3]:

M = mc.finite_module([2, 4])
double = mc.matrix_morphism(M, M, [[1, 0], [0, 2]])
print("M =", M, "with", mc.cardinality(M), "elements")
print("image of double:", mc.image(double), "->", [x.coords for x in mc.elements(M) if x in mc.image(double)])
print("kernel of double:", mc.kernel(double))

# ## Quotients
#
# Dividing by the image gives a quotient and its projection. By the
# correspondence theorem, the kernel of the projection is the submodule we
# divided by.

# In[4]:

Q, proj = mc.quotient(M, mc.image(double))
print("M / image =", Q)
print("kernel(proj) == image:", mc.kernel(proj) == mc.image(double))

# ## Hom groups
#
# Hom(Z/2, Z/4) is generated by the single map 1 -> 2. The hom solver
# returns a generating set together with the order of each generator.

# In[5]:

Z2, Z4 = mc.finite_module([2]), mc.finite_module([4])
print("generators:", [g.matrix for g in mc.hom_generators(Z2, Z4)])
print("orders:", mc.hom_group_orders(Z2, Z4))
print("all homs:", [f.matrix for f in mc.all_homs(Z2, Z4)])

# ## Shift modules
#
# A shift module is a countable direct sum of copies of one block B.
# Its finitely supported submodules are handled exactly. The Bernoulli
# shift moves the support one block to the right.

# In[6]:

S = mc.shift_module(Z2)
beta = mc.bernoulli_shift(S)
first = mc.submodule(S, [[1]])
print("beta(first block) =", mc.image_of(beta, first))
print("beta^3(first block) =", mc.image_of(mc.power(beta, 3), first))
