# Limit dispersion f(t)=cos(t/2)-t*sin(t/2)/4 at alpha=1/4, beta=3/4: band edges (f=+-1) and theta=1/4 roots (f=0) to 20 digits.
from mpmath import mp, mpf, cos, sin, sqrt, findroot, pi
mp.dps=30
f=lambda t: cos(t/2)-t*sin(t/2)/4
def bis(g,a,b):
    ga=g(a)
    for _ in range(200):
        m=(a+b)/2; gm=g(m)
        if (gm>0)==(ga>0): a,ga=m,gm
        else: b=m
    return (a+b)/2
ts=[mpf(i)/1000 for i in range(1,40001)]
edges=[]
vals=[f(t) for t in ts]
for i in range(1,len(ts)):
    for c in (1,-1):
        if (vals[i-1]-c)*(vals[i]-c)<0:
            r=bis(lambda t:f(t)-c,ts[i-1],ts[i]); edges.append((r**2,c))
for e in sorted(edges):
    if e[0]<2000: print(mp.nstr(e[0],20),e[1])
print('theta=1/4 roots:')
for i in range(1,len(ts)):
    if vals[i-1]*vals[i]<0 and ts[i]<20:
        r=bis(f,ts[i-1],ts[i]); print(mp.nstr(r**2,20), mp.nstr(r,20))
