#!/usr/bin/env python3
"""Regenerate the cyclic cubic field fixtures under fixtures/cubic/.

Fundamental units and regulators come from PARI/GP (via cypari2); the class
group records (h, sigma(h)) and the expected blocks are hand-entered reference
data kept in FIELDS below.

    pip install cypari2
    python3 tools/fixturegen/gen_cubic_fixtures.py fixtures/cubic
"""
import json
import os
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(4 * 10**9)
pari("default(realprecision, 220)")

pari("cubics(f)=my(hf=valuation(f,3),L=List(),A,a,P);"
     "for(b=1,sqrtint(4*f\\27),if(hf==2&&b%3==0,next);A=4*f-27*b^2;"
     "if(A>0&&issquare(A,&a),"
     "if(hf==0,if(a%3==1,a=-a);P=x^3+x^2+(1-f)/3*x+(f*(a-3)+1)/27);"
     "if(hf==2,if(a%9==3,a=-a);P=x^3-f/3*x-f*a/27);listput(L,[a,b,P])));L")

# f, p, (a, b), sigma, cyc, exponent e, records [(h, sh, q)], expected block
FIELDS = [
    dict(f=313, p=7, ab=(35, 1), sigma=4, cyc=[7], e=1,
         records=[([1], [2], 5)],
         expected=dict(index=7, alpha_beta=[-3, -2], unit_valuations=[1, 0],
                       class_valuations=[1, 0], torsion=[7, 7])),
    dict(f=7351, p=7, ab=(-1, 33), sigma=4, cyc=[49], e=2,
         records=[([48], [19], 11)],
         expected=dict(index=49, alpha_beta=[5, 8], unit_valuations=[2, 0],
                       class_valuations=[2, 0], torsion=[2401])),
    dict(f=231019, p=7, ab=(-1, 185), sigma=4, cyc=[343], e=3,
         records=[([260], [221], 5)],
         expected=dict(index=343, alpha_beta=[19, 18], unit_valuations=[0, 3],
                       class_valuations=[0, 3], torsion=[343, 7])),
    dict(f=10267, p=7, ab=(-1, 39), sigma=2, cyc=[7, 7], e=1,
         records=[([6, 0], [0, 6], 13), ([0, 5], [2, 2], 43)],
         expected=dict(index=49, alpha_beta=[-7, -7], unit_valuations=[1, 1],
                       torsion=[49, 7])),
    dict(f=165889, p=7, ab=(-322, 144), sigma=25, cyc=[294, 2, 2, 2], e=2,
         records=[([6, 0, 0, 0], [108, 0, 0, 0], 521)],
         expected=dict(index=784, alpha_beta=[-32, -20], unit_valuations=[0, 2],
                       class_valuations=[0, 2], torsion=[49])),
    dict(f=1360729, p=7, ab=(2333, 1), sigma=2, cyc=[98, 14], e=2,
         records=[([26, 0], [66, 6], 373), ([0, 6], [42, 10], 14197)],
         expected=dict(index=1372, alpha_beta=[42, 28], unit_valuations=[2, 1],
                       torsion=[49, 7, 7])),
    dict(f=2653621, p=7, ab=(-1, 627), sigma=2, cyc=[686, 14], e=3,
         records=[([172, 0], [352, 4], 103), ([0, 8], [0, 2], 3121)],
         expected=dict(index=9604, alpha_beta=[-112, -70], unit_valuations=[1, 3],
                       torsion=[343, 49])),
    dict(f=14376321, p=7, ab=(-7554, 128), sigma=5, cyc=[21, 7, 7], e=1,
         records=[([9, 0, 0], [3, 5, 0], 467), ([0, 6, 0], [18, 6, 0], 773),
                  ([0, 0, 5], [9, 4, 3], 1871)],
         expected=dict(index=343, alpha_beta=[21, 14], unit_valuations=[2, 1],
                       torsion=[7, 7, 7]),
         precision=100),
    dict(f=45589, p=13, ab=(-427, 1), sigma=2, cyc=[169], e=2,
         records=[([1], [146], 7)],
         expected=dict(index=169, alpha_beta=[15, 8], unit_valuations=[2, 0],
                       class_valuations=[2, 0], torsion=[169])),
    dict(f=197587, p=13, ab=(-889, 1), sigma=4, cyc=[507], e=2,
         records=[([93], [18], 47)],
         expected=dict(index=169, alpha_beta=[7, 15], unit_valuations=[0, 2],
                       class_valuations=[0, 2], torsion=[169])),
    dict(f=559561, p=13, ab=(-886, 232), sigma=3, cyc=[13, 13], e=1,
         records=[([3, 0], [9, 0], 71), ([0, 6], [9, 2], 13)],
         expected=dict(index=169, alpha_beta=[0, 13], unit_valuations=[1, 1],
                       torsion=[13, 13])),
    dict(f=715549, p=13, ab=(-283, 321), sigma=2, cyc=[13, 13], e=1,
         records=[([12, 0], [4, 0], 17), ([0, 3], [0, 1], 43)],
         expected=dict(index=169, alpha_beta=[7, -8], unit_valuations=[0, 2],
                       torsion=[13, 13])),
    dict(f=411813, p=19, ab=(-3, 247), sigma=2, cyc=[1083], e=2,
         records=[([501], [495], 19)],
         expected=dict(index=361, alpha_beta=[-21, -5], unit_valuations=[0, 2],
                       class_valuations=[0, 2], torsion=[361])),
    dict(f=487909, p=19, ab=(1397, 1), sigma=2, cyc=[57, 19], e=1,
         records=[([42, 0], [30, 15], 977), ([0, 4], [12, 4], 337)],
         expected=dict(index=361, alpha_beta=[19, 0], unit_valuations=[1, 1],
                       torsion=[19, 19])),
    dict(f=191413, p=31, ab=(875, 1), sigma=4, cyc=[31, 31], e=1,
         records=[([1, 0], [30, 30], 5), ([0, 23], [23, 0], 983)],
         expected=dict(index=961, alpha_beta=[31, 0], unit_valuations=[1, 1],
                       torsion=[31, 31])),
    dict(f=228013, p=31, ab=(-955, 1), sigma=2, cyc=[961], e=2,
         records=[([1], [439], 5)],
         expected=dict(index=961, alpha_beta=[-11, -35], unit_valuations=[2, 0],
                       class_valuations=[2, 0], torsion=[961])),
    # Unit fixture only: a conjugate of the fundamental unit is ~1e-69, so
    # evaluating it from power-basis coordinates needs ~150 digits.
    dict(f=42667, p=7, ab=None, sigma=None, cyc=None, e=None, records=None,
         expected=None, precision=150),
]


def rational_str(c):
    c = pari(c)
    num, den = int(c.numerator()), int(c.denominator())
    return str(num) if den == 1 else f"{num}/{den}"


def minkowski_unit(K, G2):
    """A unit eps with <eps, eps^sigma> = E_K (regulator quotient 1)."""
    pari("mink(K,G2)=my(fu=K.fu,reg=K.reg,rho=real(polroots(K.pol)[1]),e,es,l1,l2);"
         "foreach([[1,0],[0,1],[1,1],[1,-1],[2,1],[1,2],[2,-1],[1,-2]],v,"
         "e=lift(fu[1]^v[1]*fu[2]^v[2]);es=lift(nfgaloisapply(K,G2,e));"
         "l1=log(abs(subst(e,x,rho)));l2=log(abs(subst(es,x,rho)));"
         "if(abs((l1^2+l1*l2+l2^2)/reg-1)<10^-40,return([e,reg])));0")
    res = pari("mink")(K, G2)
    if res == 0:
        raise RuntimeError("no Minkowski unit among small combinations")
    return res[0], res[1]


def build(entry):
    f = entry["f"]
    cands = pari(f"cubics({f})")
    rec = None
    for a, b, P in cands:
        if entry["ab"] is None or (int(a), int(b)) == tuple(entry["ab"]):
            rec = (int(a), int(b), P)
            break
    if rec is None:
        raise RuntimeError(f"no (a,b) match for f={f}")
    a, b, P = rec
    K = pari.bnfinit(P, 1)
    G2 = pari.nfgaloisconj(P)[1]
    eps, reg = minkowski_unit(K, G2)
    coeffs = [int(c) for c in reversed(pari.Vec(P))]
    doc = {
        "field": {"f": f, "a": a, "b": b, "P": coeffs},
        "units": {
            "epsilon": [rational_str(pari.polcoeff(eps, i, "x")) for i in range(3)],
            "regulator": str(pari("(r)->Strprintf(\"%.60g\", r)")(reg)),
            "precision": entry.get("precision", 60),
            "source": "PARI/GP " + ".".join(str(v) for v in pari.version()[:3]) + " bnfinit(P,1).fu",
        },
    }
    if entry["sigma"] is not None:
        doc["sigma"] = entry["sigma"]
    if entry["records"] is not None:
        doc["classgroup"] = {
            "cyc": entry["cyc"],
            "p": entry["p"],
            "exponent_e": entry["e"],
            "records": [{"h": h, "sh": sh, "q": q} for h, sh, q in entry["records"]],
        }
    if entry["expected"] is not None:
        doc["expected"] = entry["expected"]
    return doc


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "fixtures/cubic"
    only = {int(s) for s in sys.argv[2:]}
    os.makedirs(out, exist_ok=True)
    for entry in FIELDS:
        if only and entry["f"] not in only:
            continue
        doc = build(entry)
        path = os.path.join(out, f"f{entry['f']}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(path, doc["field"]["P"], doc["units"]["regulator"][:24])


if __name__ == "__main__":
    main()
