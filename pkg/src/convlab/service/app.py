"""HTTP facade over the lab.

Every endpoint is a stateless wrapper over the pure core: parse inputs,
run the checkers, serialize the verdicts.  Bad inputs surface as 400s
with the originating error kind; nothing here holds state between calls.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from .. import __version__
from ..continuity import (
    alpha_class_membership,
    is_alpha_m_continuous,
    is_continuous_poset,
    is_doubly_continuous,
    is_m_continuous,
    is_mn_continuous,
    is_rstar_doubly_continuous,
)
from ..enumeration import enumerate_posets
from ..errors import LabError
from ..miner import MinerJob, mine
from ..nets import mn_converges, m_converges, mn_limits, m_limits, net_from_json, tau_converges
from ..poset import (
    condition_star,
    is_meet_continuous,
    parse_poset,
    poset_to_dot,
    poset_to_dsl,
)
from ..relations import (
    check_aux_properties,
    check_mn_aux_properties,
    mn_triangle_matrix,
    mn_way_below_matrix,
    way_below_matrix,
)
from ..selections import builtin, realize
from ..topology import (
    alexandrov_topology,
    is_discrete,
    scott_topology,
    tau_m,
    tau_mn,
    topology_eq,
)
from ..worked_example import run_worked_example
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    ConvergeRequest,
    ConvergeResponse,
    EnumerateResponse,
    MineRequest,
    PosetRequest,
    PosetSummary,
    TopologyRequest,
    TopologyResponse,
    WorkedExampleResponse,
)


def _parse(text: str):
    try:
        return parse_poset(text)
    except LabError as exc:
        raise HTTPException(status_code=400, detail=f"poset: {exc}") from exc


def _family(P, name: str):
    try:
        return realize(builtin(name), P)
    except (KeyError, LabError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(title="convlab", version=__version__)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/poset/parse", response_model=PosetSummary)
    def poset_parse(req: PosetRequest):
        P = _parse(req.poset)
        relation = [
            [P.labels[i], P.labels[j]]
            for i in range(P.n)
            for j in range(P.n)
            if P.leq(i, j)
        ]
        return PosetSummary(
            elements=list(P.labels),
            covers=[[P.labels[i], P.labels[j]] for i, j in P.covers()],
            relation=relation,
            dsl=poset_to_dsl(P),
            dot=poset_to_dot(P),
        )

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest):
        P = _parse(req.poset)
        fam = _family(P, req.selection)
        wb = way_below_matrix(fam)
        relations = {"way_below": wb.to_json(P.labels)}
        verdicts = {
            "m_continuous": is_m_continuous(fam).to_json(),
            "alpha_m_continuous": is_alpha_m_continuous(fam).to_json(),
        }
        reports = {
            "aux_way_below": check_aux_properties(fam).to_json(),
            "alpha_class_membership": alpha_class_membership(fam).to_json(),
        }
        mn_family = None
        if req.mn:
            nfam = _family(P, req.mn)
            mn_family = nfam.to_json()
            relations["mn_way_below"] = mn_way_below_matrix(fam, nfam).to_json(P.labels)
            relations["mn_triangle"] = mn_triangle_matrix(fam, nfam).to_json(P.labels)
            verdicts["mn_continuous"] = is_mn_continuous(fam, nfam).to_json()
            reports["aux_mn"] = check_mn_aux_properties(fam, nfam).to_json()
        poset_properties = {
            "continuous": is_continuous_poset(P).holds,
            "doubly_continuous": is_doubly_continuous(P).holds,
            "rstar_doubly_continuous": is_rstar_doubly_continuous(P).holds,
            "meet_continuous": is_meet_continuous(P).holds,
            "condition_star": condition_star(P).holds,
        }
        violations = not all(r["holds"] for r in reports.values() if r["name"].startswith("aux"))
        return AnalyzeResponse(
            poset=poset_to_dsl(P),
            family=fam.to_json(),
            mn_family=mn_family,
            relations=relations,
            verdicts=verdicts,
            reports=reports,
            poset_properties=poset_properties,
            violations=violations,
        )

    @app.post("/topology", response_model=TopologyResponse)
    def topology(req: TopologyRequest):
        P = _parse(req.poset)
        fam = _family(P, req.selection)
        if req.mn:
            nfam = _family(P, req.mn)
            T = tau_mn(fam, nfam)
            return TopologyResponse(
                poset=poset_to_dsl(P),
                kind=f"tau_mn({req.selection},{req.mn})",
                topology=T.to_json(P.labels),
                discrete=is_discrete(T),
            )
        T = tau_m(fam)
        return TopologyResponse(
            poset=poset_to_dsl(P),
            kind=f"tau_m({req.selection})",
            topology=T.to_json(P.labels),
            discrete=is_discrete(T),
            equals_alexandrov=topology_eq(T, alexandrov_topology(P)),
            equals_scott=topology_eq(T, scott_topology(P)),
        )

    @app.post("/converge", response_model=ConvergeResponse)
    def converge(req: ConvergeRequest):
        P = _parse(req.poset)
        try:
            net = net_from_json(P, req.net)
            x = P.elem(req.limit)
        except LabError as exc:
            raise HTTPException(status_code=400, detail=f"net: {exc}") from exc
        fam = _family(P, req.selection)
        if req.mn:
            nfam = _family(P, req.mn)
            ok = mn_converges(fam, nfam, net, x)
            lims = mn_limits(fam, nfam, net)
            T = tau_mn(fam, nfam)
            kind = "MN"
        else:
            ok = m_converges(fam, net, x)
            lims = m_limits(fam, net)
            T = tau_m(fam)
            kind = "M"
        return ConvergeResponse(
            kind=kind,
            limit=req.limit,
            converges=ok,
            tau_converges=tau_converges(T, net, x),
            limits=P.label_list(lims),
        )

    @app.post("/mine")
    def mine_endpoint(req: MineRequest):
        try:
            job = MinerJob(
                n_max=req.n_max,
                selections=tuple(req.selections),
                properties=tuple(req.properties),
                dedup="unlabeled" if req.unlabeled else "labeled",
                seed=req.seed,
            )
            return mine(job)
        except (KeyError, LabError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/paper-example", response_model=WorkedExampleResponse)
    def paper_example():
        return WorkedExampleResponse(**run_worked_example())

    @app.get("/enumerate", response_model=EnumerateResponse)
    def enumerate_(n: int = Query(ge=0), unlabeled: bool = False):
        dedup = "unlabeled" if unlabeled else "labeled"
        try:
            posets = [poset_to_dsl(P) for P in enumerate_posets(n, dedup=dedup)]
        except LabError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return EnumerateResponse(n=n, dedup=dedup, count=len(posets), posets=posets)

    return app


app = create_app()
