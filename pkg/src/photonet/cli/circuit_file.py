"""JSON circuit files with explicit wire ids.

A document looks like::

    {"dom": ["qmode", "qmode"], "cod": ["qmode", "qmode"],
     "inputs": [0, 1], "outputs": [2, 3],
     "boxes": [{"name": "BS", "params": [], "wires_in": [0, 1], "wires_out": [2, 3]}],
     "symbols": {}, "meta": {}}

``inputs`` defaults to ``0..len(dom)-1`` and ``outputs`` to the live wires in
increasing id order.  Parameters that are strings are symbols.  Complex
numbers are written ``{"re": x, "im": y}``.  Boxes may carry ``"type"`` (a
wire type string) and ``"dagger": true``.
"""

from __future__ import annotations

import json

import numpy as np

from .. import channels as ch
from .. import generators as g
from ..diagram import DaggerBox, Diagram, Scalar, as_diagram
from ..errors import CircuitFileError, PhotonetError
from ..fusion import fusion_outcome
from ..symbols import Symbol
from ..types import Ty, WireType, as_ty, bit, qmode, qubit


def _ty(s):
    try:
        return Ty(WireType(s))
    except ValueError:
        raise CircuitFileError(f"unknown wire type {s!r}") from None


def _tys(xs):
    out = Ty()
    for x in xs:
        out = out @ _ty(x)
    return out


def _ty_names(ty):
    return [t.value for t in as_ty(ty)]


def _param_in(p):
    if isinstance(p, str):
        return Symbol(p)
    if isinstance(p, dict):
        return complex(p["re"], p.get("im", 0.0))
    if isinstance(p, list):
        return [_param_in(x) for x in p]
    return p


def _param_out(p):
    if isinstance(p, Symbol):
        return p.name
    if isinstance(p, (complex, np.complexfloating)):
        p = complex(p)
        return {"re": p.real, "im": p.imag} if p.imag else p.real
    if isinstance(p, (np.integer,)):
        return int(p)
    if isinstance(p, (np.floating,)):
        return float(p)
    if isinstance(p, (list, tuple)):
        return [_param_out(x) for x in p]
    return p


def _array_in(a):
    return np.asarray(a["re"], dtype=float) + 1j * np.asarray(a.get("im", 0.0), dtype=float)


def _array_out(a):
    a = np.asarray(a)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


# name -> factory(params, entry); each returns a Box or a Diagram
def _typed(entry, default):
    return _ty(entry["type"]) if "type" in entry else default


REGISTRY = {
    "Z": lambda p, e: g.Z(int(p[0]), int(p[1]), p[2] if len(p) > 2 else 0.0, ty=_typed(e, qubit)),
    "X": lambda p, e: g.X(int(p[0]), int(p[1]), p[2] if len(p) > 2 else 0.0, ty=_typed(e, qubit)),
    "H": lambda p, e: g.H(),
    "Create": lambda p, e: g.Create(*p, ty=_typed(e, qmode)),
    "Select": lambda p, e: g.Select(*p, ty=_typed(e, qmode)),
    "W": lambda p, e: g.W(int(p[0])),
    "W†": lambda p, e: g.W(int(p[0]), merge=True),
    "NumOp": lambda p, e: g.NumOp(),
    "Pow": lambda p, e: g.PowerBox(p[0]),
    "ZW": lambda p, e: g.ZBox(int(p[0]), int(p[1]), p[2] if len(p) > 2 else (1.0,)),
    "Phase": lambda p, e: g.Phase(p[0]),
    "TBS": lambda p, e: g.TBS(p[0]),
    "BBS": lambda p, e: g.BBS(p[0] if p else 0.0),
    "BS": lambda p, e: g.BS,
    "HadamardBS": lambda p, e: g.HadamardBS(),
    "MZI": lambda p, e: g.MZI(p[0], p[1]),
    "DualRail": lambda p, e: g.DualRail(int(p[0]) if p else 1),
    "PostselectBit": lambda p, e: g.PostselectBit(int(p[0]) if p else 1),
    "Not": lambda p, e: g.Not(),
    "Xor": lambda p, e: g.Xor(*p),
    "And": lambda p, e: g.And(*p),
    "Or": lambda p, e: g.Or(*p),
    "Add": lambda p, e: g.Add(*p),
    "Sub": lambda p, e: g.Sub(),
    "Multiply": lambda p, e: g.Multiply(),
    "Divide": lambda p, e: g.Divide(),
    "Mod2": lambda p, e: g.Mod2(),
    "Threshold": lambda p, e: g.Threshold(),
    "Copy": lambda p, e: g.Copy(*p, ty=_typed(e, bit)),
    "FusionOutcome": lambda p, e: fusion_outcome(),
    "CtrlX": lambda p, e: g.CtrlX(),
    "CtrlZ": lambda p, e: g.CtrlZ(),
    "Measure": lambda p, e: ch.Measure(_typed(e, qubit)),
    "Discard": lambda p, e: ch.Discard(_typed(e, qubit)),
    "Encode": lambda p, e: ch.Encode(_typed(e, bit)),
    "PhotonLoss": lambda p, e: ch.PhotonLoss(p[0]),
    "BitFlip": lambda p, e: ch.BitFlipError(p[0]),
    "Dephasing": lambda p, e: ch.DephasingError(p[0]),
    "Scalar": lambda p, e: Scalar(p[0] if p else 1.0),
    "Dense": lambda p, e: g.DenseBox(e.get("label", "Dense"), _tys(e["dom"]), _tys(e["cod"]),
                                     _array_in(e["array"])),
    "BitControlled": lambda p, e: g.BitControlledGate(parse(e["body"])),
    "Channel": lambda p, e: ch.Channel(e.get("label", "Channel"), parse(e["kraus"]),
                                       _tys(e.get("env", []))),
}

_NAMED_CHANNELS = {"PhotonLoss", "BitFlip", "Dephasing"}


def box_entry(box) -> dict:
    """JSON entry (without wires) for a single box."""
    if isinstance(box, DaggerBox):
        e = box_entry(box.inner)
        e["dagger"] = not e.get("dagger", False)
        if not e["dagger"]:
            del e["dagger"]
        return e
    e = {"name": box.name, "params": _param_out(list(box.params))}
    if isinstance(box, g.Spider):
        e["params"] = [box.n_in, box.n_out, _param_out(box.phase)]
        if box.ty != qubit:
            e["type"] = box.ty[0].value
    elif isinstance(box, (g.Create, g.Select)):
        if getattr(box, "internal_states", None):
            raise CircuitFileError("internal states are not serialisable")
        if box.ty != qmode:
            e["type"] = box.ty[0].value
    elif isinstance(box, g.ZBox):
        e["params"] = [box.n_in, box.n_out, _param_out(list(box.amps))]
    elif isinstance(box, g.DualRail) and getattr(box, "internal_states", None):
        raise CircuitFileError("internal states are not serialisable")
    elif isinstance(box, g.ClassicalBox) and box.name == "Copy":
        if box.dom != bit:
            e["type"] = box.dom[0].value
    elif isinstance(box, ch.MeasureChannel):
        e = {"name": "Measure", "params": [], "type": box.ty[0].value}
    elif isinstance(box, ch.Channel):
        if box.name in ("Discard", "Encode") and len(box.dom) == 1:
            e = {"name": box.name, "params": [], "type": box.dom[0].value}
        elif box.name in _NAMED_CHANNELS and box.params:
            e = {"name": box.name, "params": _param_out(list(box.params))}
        else:
            e = {"name": "Channel", "params": [], "label": box.name,
                 "kraus": serialize(box.kraus), "env": _ty_names(box.env)}
    elif isinstance(box, g.BitControlledGate):
        if box == g.CtrlX():
            e = {"name": "CtrlX", "params": []}
        elif box == g.CtrlZ():
            e = {"name": "CtrlZ", "params": []}
        else:
            e = {"name": "BitControlled", "params": [], "body": serialize(box.body)}
    elif isinstance(box, g.DenseBox):
        e = {"name": "Dense", "params": [], "label": box.name, "dom": _ty_names(box.dom),
             "cod": _ty_names(box.cod), "array": _array_out(box.array)}
    if e["name"] not in REGISTRY:
        raise CircuitFileError(f"{box!r} has no circuit-file form")
    return e


def serialize(d, symbols=None, meta=None) -> dict:
    """Canonical document: wires numbered inputs first, then box outputs in order."""
    d = as_diagram(d)
    ren = {}

    def r(w):
        if w not in ren:
            ren[w] = len(ren)
        return ren[w]

    for w in d.inputs:
        r(w)
    boxes = []
    for box, ins, outs in d.ops:
        e = box_entry(box)
        e["wires_in"] = [r(w) for w in ins]
        e["wires_out"] = [r(w) for w in outs]
        boxes.append(e)
    for c in d.scalars:
        boxes.append({"name": "Scalar", "params": [_param_out(complex(c))],
                      "wires_in": [], "wires_out": []})
    return {
        "dom": _ty_names(d.dom),
        "cod": _ty_names(d.cod),
        "inputs": [r(w) for w in d.inputs],
        "outputs": [r(w) for w in d.outputs],
        "boxes": boxes,
        "symbols": dict(symbols or {}),
        "meta": dict(meta or {}),
    }


def _build(entry, k):
    name = entry.get("name")
    if name not in REGISTRY:
        raise CircuitFileError(f"unknown generator {name!r}", k)
    params = [_param_in(p) for p in entry.get("params", [])]
    try:
        obj = as_diagram(REGISTRY[name](params, entry))
    except CircuitFileError as err:
        raise CircuitFileError(str(err), k) from None
    except (PhotonetError, TypeError, ValueError, KeyError, IndexError) as err:
        raise CircuitFileError(f"cannot build {name}: {err}", k) from None
    return obj.dagger() if entry.get("dagger") else obj


def parse(doc, bind=False) -> Diagram:
    """Build the diagram of a document (a dict, JSON string or path).

    With ``bind=True`` the document's ``symbols`` are substituted.
    """
    if isinstance(doc, str):
        doc = json.loads(doc) if doc.lstrip().startswith("{") else json.load(open(doc))
    if not isinstance(doc, dict):
        raise CircuitFileError("a circuit file is a JSON object")
    for key in ("dom", "cod", "boxes"):
        if key not in doc:
            raise CircuitFileError(f"missing field {key!r}")
    dom, cod = _tys(doc["dom"]), _tys(doc["cod"])
    inputs = doc.get("inputs", list(range(len(dom))))
    if len(inputs) != len(dom):
        raise CircuitFileError("inputs and dom have different lengths")

    def built(*ws):
        live = dict(zip(inputs, ws))
        if len(live) != len(ws):
            raise CircuitFileError("duplicate input wire ids")
        for k, entry in enumerate(doc["boxes"]):
            obj = _build(entry, k)
            w_in, w_out = entry.get("wires_in", []), entry.get("wires_out", [])
            try:
                args = [live.pop(w) for w in w_in]
            except KeyError as err:
                raise CircuitFileError(f"wire {err.args[0]} is not live", k) from None
            try:
                res = obj(*args)
            except PhotonetError as err:
                raise CircuitFileError(str(err), k) from None
            res = [] if res is None else (list(res) if isinstance(res, tuple) else [res])
            if len(res) != len(w_out):
                raise CircuitFileError(f"{len(w_out)} output ids for {len(res)} outputs", k)
            for w, x in zip(w_out, res):
                if w in live:
                    raise CircuitFileError(f"wire id {w} is already live", k)
                live[w] = x
        outputs = doc.get("outputs", sorted(live))
        try:
            return tuple(live.pop(w) for w in outputs)
        except KeyError as err:
            raise CircuitFileError(f"output wire {err.args[0]} is not live") from None

    try:
        d = Diagram.from_callable(dom=dom, cod=cod)(built)
    except CircuitFileError:
        raise
    except PhotonetError as err:
        raise CircuitFileError(str(err)) from None
    if bind and doc.get("symbols"):
        d = d.subs({Symbol(k): v for k, v in doc["symbols"].items()})
    return d


def canonical(doc) -> dict:
    """Normal form of a document: defaults filled in and wires renumbered."""
    return serialize(parse(doc), doc.get("symbols"), doc.get("meta"))


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1)


__all__ = ["REGISTRY", "box_entry", "canonical", "dumps", "parse", "serialize"]
