# Independent Pruefer-angle eigenvalue counter for the defect medium (plain floats).
import math, sys
def seg_layout(n, layout):
    P=1/(4*n); soft=P*P; segs=[]
    def side(left):
        out=[]
        for i in range(n):
            if layout=='sss': cell=[(P/4,1),(P/2,soft),(P/4,1)]
            else: cell=[(P/2,1),(P/2,soft)]   # stiff then soft
            out+=cell
        if layout!='sss' and not left: out=out[::-1]
        return out
    segs=side(True)+[(0.5,2.0)]+side(False)
    return segs
def count(segs, lam, bc):
    # Prufer angle, unscaled phi=atan2(u,f)
    phi = 0.0 if bc=='D' else math.pi/2
    for L,q in segs:
        s=lam/q
        w=math.sqrt(s); c=q*w
        k=math.floor(phi/math.pi); r=phi-k*math.pi
        psi=k*math.pi+math.atan2(c*math.sin(r),math.cos(r))
        psi+=w*L
        k=math.floor(psi/math.pi); r=psi-k*math.pi
        phi=k*math.pi+math.atan2(math.sin(r)/c,math.cos(r))
    beta = math.pi if bc=='D' else math.pi/2
    return max(0, math.ceil((phi-beta)/math.pi)) if phi>beta else 0
def eig_in(segs, lo, hi, bc):
    cl=count(segs,lo,bc); ch=count(segs,hi,bc); res=[]
    for k in range(cl,ch):
        a,b=lo,hi
        for _ in range(60):
            m=(a+b)/2
            if count(segs,m,bc)>k: b=m
            else: a=m
        res.append((a+b)/2)
    return res
def main():
  layout=sys.argv[1] if len(sys.argv)>1 else 'sss'
  for n in [128,256,512,1024]:
      segs=seg_layout(n,layout)
      print(n,len(segs))
      for bc in 'DN':
          for (lo,hi) in [(11.79,39.46),(65.79,157.88),(187.68,355.26),(386.14,622.27),(662.92,986.77),(1018.44,1421.05)]:
              print(' ',bc,lo,hi,[round(x,4) for x in eig_in(segs,lo,hi,bc)])

if __name__ == '__main__':
    main()
