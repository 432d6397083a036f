import init, { reduceFormula, solveTreedepth, gadgetDemo, presetGraph } from "./pkg/tdred_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(target, e) {
  target.innerHTML = `<p class="err">${String(e)}</p>`;
}

function rows(obj) {
  return "<table>" + Object.entries(obj)
    .map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`).join("") + "</table>";
}

function reduce() {
  const out = $("reduce-out");
  try {
    const r = JSON.parse(reduceFormula($("cnf").value, num("p")));
    const s = r.sidecar;
    out.innerHTML = rows({
      "n, m, k": `${s.n}, ${s.m}, ${s.k}`,
      "p, γ, ℓ": `${s.p}, ${s.gamma}, ${s.ell}`,
      "|V(H)|, |E(H)|": `${s.num_vertices}, ${s.num_edges}`,
      "max satisfiable clauses": s.m_star ?? "too many variables",
      "vc(G): predicted / solved": `${s.predicted_vc ?? "?"} / ${r.vc ?? "too large"}`,
      "td(H) predicted": s.predicted_td ?? "?",
    }) + `<details><summary>PACE .gr</summary><pre>${r.gr}</pre></details>`;
    $("gr").value = r.gr;
  } catch (e) {
    fail(out, e);
  }
}

function solve() {
  const out = $("solve-out");
  out.textContent = "solving...";
  setTimeout(() => {
    try {
      const r = JSON.parse(solveTreedepth($("gr").value, num("budget")));
      out.innerHTML = rows({
        vertices: r.num_vertices,
        edges: r.num_edges,
        depth: r.depth + (r.exact ? " (exact)" : ` (lower bound ${r.lower_bound})`),
      }) + `<details><summary>parents</summary><pre>${r.parents.join(" ")}</pre></details>`;
    } catch (e) {
      fail(out, e);
    }
  }, 0);
}

function drawTripartite(r) {
  const w = 420, h = 220, x = [70, 210, 350];
  const pos = {};
  r.parts.forEach((part, i) => part.forEach((v, j) => {
    pos[v] = [x[i], 40 + j * ((h - 80) / Math.max(1, part.length - 1 || 1))];
  }));
  const inCover = new Set(r.cover);
  const lines = r.edges.map(([u, v]) =>
    `<line x1="${pos[u][0]}" y1="${pos[u][1]}" x2="${pos[v][0]}" y2="${pos[v][1]}" stroke="#999"/>`).join("");
  const dots = Object.entries(pos).map(([v, [cx, cy]]) =>
    `<circle cx="${cx}" cy="${cy}" r="9" fill="${inCover.has(Number(v)) ? "#d9534f" : "#fff"}" stroke="#333"/>` +
    `<text x="${cx}" y="${cy + 4}" font-size="10" text-anchor="middle">${v}</text>`).join("");
  const labels = ["A", "B", "C"].map((l, i) => `<text x="${x[i]}" y="16" text-anchor="middle">${l}</text>`).join("");
  return `<svg width="${w}" height="${h}">${labels}${lines}${dots}</svg>`;
}

function gadget() {
  const out = $("gadget-out");
  out.textContent = "building...";
  setTimeout(() => {
    try {
      const r = JSON.parse(gadgetDemo(num("ga"), num("gb"), num("gc"), num("gprob"), num("gseed"), num("gell"), 20000));
      out.innerHTML = drawTripartite(r) + "<p>Red vertices form a minimum vertex cover.</p>" + rows({
        "vc(G)": r.vc,
        "|V(H)|": r.num_vertices,
        "vc + ℓ + 1": r.predicted_td,
        "forest from the cover": `depth ${r.certificate_depth}, ${r.certificate_valid ? "valid" : "INVALID"}`,
        "td(H)": r.td + (r.td_exact ? " (exact)" : " (search budget exhausted)"),
      });
    } catch (e) {
      fail(out, e);
    }
  }, 0);
}

function loadPreset() {
  try {
    $("gr").value = presetGraph($("preset").value, num("preset-n"));
  } catch (e) {
    fail($("solve-out"), e);
  }
}

await init();
$("reduce").onclick = reduce;
$("solve").onclick = solve;
$("gadget").onclick = gadget;
$("load-preset").onclick = loadPreset;
loadPreset();
