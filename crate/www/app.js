// Demo page driver: reads the sliders, calls the WebAssembly bindings and
// redraws the three canvases. No framework, plain canvas 2D.

const COLORS = {
  grid: "#2c3947",
  axis: "#8ba0b4",
  theta: "#ffb454",
  eta: "#7ee0a3",
  pressure: "#58a6ff",
  saturation: "#ff6b81",
  delta: "#c792ea",
  front: "#58a6ff",
  majorant: "#7ee0a3",
  bound: "#ff6b81",
};

let wasm = null;

function $(id) { return document.getElementById(id); }

const sliders = [
  "theta_e", "theta_s", "p_e", "p_s", "q", "lambda_i", "pi_s",
  "eta_e", "psi", "k", "l", "tfield", "z", "tend",
];

function sliderValue(name) {
  const raw = parseFloat($("in-" + name).value);
  switch (name) {
    case "p_e": case "p_s": return raw * 1e3;        // kPa -> Pa
    case "q": return Math.pow(10, raw) * 1e-3;       // log slider, mm/s -> m/s
    case "eta_e": return raw * 1e-6;                 // uPa s -> Pa s
    case "k": return Math.pow(10, raw);              // log slider
    case "l": return raw * 1e-3;                     // mm -> m
    case "tfield": return Math.pow(10, raw);         // log slider
    default: return raw;
  }
}

function formatValue(name) {
  const v = sliderValue(name);
  switch (name) {
    case "p_e": case "p_s": return (v / 1e3).toFixed(1) + " kPa";
    case "q": return (v * 1e3).toPrecision(3) + " mm/s";
    case "eta_e": return (v * 1e6).toFixed(1) + " uPa s";
    case "k": return v.toExponential(2);
    case "l": return (v * 1e3).toFixed(1) + " mm";
    case "tfield": return v.toExponential(1) + " s";
    case "z": return v.toFixed(2);
    case "tend": return v.toFixed(0) + " s";
    default: return v.toFixed(2);
  }
}

function params() {
  return JSON.stringify({
    L: sliderValue("l"),
    K: sliderValue("k"),
    lambda_i: sliderValue("lambda_i"),
    pi_s: sliderValue("pi_s"),
    eta_e: sliderValue("eta_e"),
    psi: sliderValue("psi"),
    theta_e: sliderValue("theta_e"),
    theta_s: sliderValue("theta_s"),
    p_e: sliderValue("p_e"),
    p_s: sliderValue("p_s"),
    q: sliderValue("q"),
  });
}

// --- tiny canvas plotting ---------------------------------------------

function prepareCanvas(canvas) {
  const dpr = window.devicePixelRatio || 1;
  const rect = canvas.getBoundingClientRect();
  canvas.width = rect.width * dpr;
  canvas.height = rect.height * dpr;
  const ctx = canvas.getContext("2d");
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
  ctx.clearRect(0, 0, rect.width, rect.height);
  return { ctx, width: rect.width, height: rect.height };
}

function niceTicks(lo, hi, n) {
  if (!(hi > lo)) { hi = lo + 1; }
  const span = hi - lo;
  const step0 = span / Math.max(n, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (step0 <= m * mag) { step = m * mag; break; }
  }
  const ticks = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function fmtTick(v, span) {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3 || span / a < 1e-3 && a < 1) return v.toExponential(1);
  if (a >= 100) return v.toFixed(0);
  if (a >= 1) return v.toFixed(1);
  return v.toPrecision(2);
}

// series: [{xs, ys, color, dash, label}]
function drawPlot(canvas, series, opts = {}) {
  const { ctx, width, height } = prepareCanvas(canvas);
  const margin = { left: 62, right: 12, top: 10, bottom: 30 };
  const innerW = width - margin.left - margin.right;
  const innerH = height - margin.top - margin.bottom;

  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  for (const s of series) {
    for (const x of s.xs) { if (isFinite(x)) { xMin = Math.min(xMin, x); xMax = Math.max(xMax, x); } }
    for (const y of s.ys) { if (isFinite(y)) { yMin = Math.min(yMin, y); yMax = Math.max(yMax, y); } }
  }
  if (opts.yZero) yMin = Math.min(yMin, 0);
  if (!(yMax > yMin)) yMax = yMin + 1;
  const pad = 0.06 * (yMax - yMin);
  yMin -= pad; yMax += pad;

  const sx = x => margin.left + (x - xMin) / (xMax - xMin) * innerW;
  const sy = y => margin.top + (1 - (y - yMin) / (yMax - yMin)) * innerH;

  // grid and ticks
  ctx.strokeStyle = COLORS.grid;
  ctx.fillStyle = COLORS.axis;
  ctx.lineWidth = 1;
  ctx.font = "11px system-ui";
  ctx.textAlign = "right";
  ctx.textBaseline = "middle";
  for (const t of niceTicks(yMin, yMax, 5)) {
    ctx.beginPath();
    ctx.moveTo(margin.left, sy(t));
    ctx.lineTo(width - margin.right, sy(t));
    ctx.stroke();
    ctx.fillText(fmtTick(t, yMax - yMin), margin.left - 6, sy(t));
  }
  ctx.textAlign = "center";
  ctx.textBaseline = "top";
  for (const t of niceTicks(xMin, xMax, 7)) {
    ctx.beginPath();
    ctx.moveTo(sx(t), margin.top);
    ctx.lineTo(sx(t), height - margin.bottom);
    ctx.stroke();
    ctx.fillText(fmtTick(t, xMax - xMin), sx(t), height - margin.bottom + 6);
  }
  if (opts.xLabel) {
    ctx.fillText(opts.xLabel, margin.left + innerW / 2, height - 16);
  }
  if (opts.yLabel) {
    ctx.save();
    ctx.translate(14, margin.top + innerH / 2);
    ctx.rotate(-Math.PI / 2);
    ctx.fillText(opts.yLabel, 0, 0);
    ctx.restore();
  }

  // series
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash || []);
    ctx.lineWidth = 1.8;
    ctx.beginPath();
    let started = false;
    for (let i = 0; i < s.xs.length; i++) {
      if (!isFinite(s.xs[i]) || !isFinite(s.ys[i])) continue;
      const px = sx(s.xs[i]), py = sy(s.ys[i]);
      if (started) ctx.lineTo(px, py); else { ctx.moveTo(px, py); started = true; }
    }
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // legend
  let lx = margin.left + 10, ly = margin.top + 8;
  ctx.font = "12px system-ui";
  ctx.textAlign = "left";
  ctx.textBaseline = "middle";
  for (const s of series.filter(s => s.label)) {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash || []);
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(lx, ly);
    ctx.lineTo(lx + 22, ly);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#dfe7ee";
    ctx.fillText(s.label, lx + 28, ly);
    ly += 16;
  }
}

// --- redraw logic -------------------------------------------------------

function drawFields() {
  const t = sliderValue("tfield");
  const snap = JSON.parse(wasm.fieldSnapshot(params(), t, 241));
  const mm = snap.x2.map(x => x * 1e3);

  drawPlot($("plot-theta"), [
    { xs: mm, ys: snap.theta, color: COLORS.theta, label: "temperature (K)" },
    { xs: mm, ys: snap.eta.map(e => snap.theta_s + (snap.theta_e - snap.theta_s) *
        (e - Math.min(...snap.eta)) / Math.max(1e-300, Math.max(...snap.eta) - Math.min(...snap.eta))),
      color: COLORS.eta, dash: [6, 4], label: "viscosity (scaled)" },
  ], { xLabel: "depth x2 (mm)", yLabel: "K" });

  drawPlot($("plot-pressure"), [
    { xs: mm, ys: snap.p_i.map(p => p / 1e3), color: COLORS.pressure, label: "applied pressure (kPa)" },
    { xs: mm, ys: snap.p_i_limit.map(p => p / 1e3), color: COLORS.pressure, dash: [6, 4], label: "applied, long-time" },
    { xs: mm, ys: snap.p_vs.map(p => p / 1e3), color: COLORS.saturation, label: "saturation pressure (kPa)" },
  ], { xLabel: "depth x2 (mm)", yLabel: "kPa" });

  drawPlot($("plot-delta"), [
    { xs: mm, ys: snap.delta, color: COLORS.delta, label: "condensation fraction" },
    { xs: mm, ys: snap.delta_limit, color: COLORS.delta, dash: [6, 4], label: "long-time limit" },
  ], { xLabel: "depth x2 (mm)", yLabel: "fraction", yZero: true });
}

function drawFront() {
  const z = sliderValue("z");
  const tEnd = sliderValue("tend");
  const dt = Math.max(tEnd / 2000, 1e-3);
  const traj = JSON.parse(wasm.frontTrajectory(params(), z, tEnd, dt));
  const series = [
    { xs: traj.t, ys: traj.x2.map(x => x * 1e3), color: COLORS.front, label: "front position (mm)" },
  ];
  if (traj.bound_applicable) {
    series.push({ xs: traj.t, ys: traj.majorant.map(x => x * 1e3), color: COLORS.majorant, dash: [6, 4], label: "majorant" });
    series.push({ xs: [traj.t[0], traj.t[traj.t.length - 1]], ys: [traj.bound * 1e3, traj.bound * 1e3], color: COLORS.bound, dash: [2, 4], label: "arrest bound" });
  }
  drawPlot($("plot-front"), series, { xLabel: "time (s)", yLabel: "mm", yZero: true });
  const c = traj.plateau;
  $("status").textContent = traj.bound_applicable
    ? `plateau c = ${c.toFixed(4)}; bound ${(traj.bound * 1e3).toPrecision(4)} mm; w0 = ${(traj.profile_speed * 1e3).toPrecision(3)} mm/s`
    : `plateau c = ${c.toFixed(4)} <= 0: bound not applicable, front advances freely`;
}

function drawBound() {
  const prof = JSON.parse(wasm.boundProfile(params(), 121));
  const series = [];
  if (prof.applicable) {
    series.push({ xs: prof.z, ys: prof.bound.map(b => b * 1e3), color: COLORS.bound, label: "arrest bound (mm)" });
    series.push({ xs: [0, 1], ys: [prof.pore_length * 1e3, prof.pore_length * 1e3], color: COLORS.axis, dash: [2, 4], label: "pore length" });
  }
  drawPlot($("plot-bound"), series.length ? series : [{ xs: [0, 1], ys: [0, 0], color: COLORS.axis, label: "bound not applicable" }],
    { xLabel: "gap coordinate z", yLabel: "mm", yZero: true });
}

let redrawQueued = false;
function redrawAll() {
  if (!wasm || redrawQueued) return;
  redrawQueued = true;
  const button = $("recompute");
  button.disabled = true;
  requestAnimationFrame(() => {
    try {
      drawFields();
      drawBound();
      drawFront(); // last: also writes the status line
    } catch (err) {
      $("status").textContent = "error: " + err;
    } finally {
      button.disabled = false;
      redrawQueued = false;
    }
  });
}

function refreshOutputs() {
  for (const name of sliders) {
    $("out-" + name).textContent = formatValue(name);
  }
}

function hookControls() {
  for (const name of sliders) {
    $("in-" + name).addEventListener("input", () => {
      refreshOutputs();
      // Field/bound plots are cheap; the front integration runs on demand
      // or when its own controls move.
      if (name === "tfield") { drawFields(); }
      else if (name === "z" || name === "tend") { drawFront(); }
    });
    $("in-" + name).addEventListener("change", redrawAll);
  }
  $("recompute").addEventListener("click", redrawAll);
  window.addEventListener("resize", redrawAll);
}

async function boot() {
  refreshOutputs();
  try {
    const module = await import("./pkg/vaporfront_wasm.js");
    await module.default();
    wasm = module;
  } catch (err) {
    document.getElementById("load-error").style.display = "block";
    console.error(err);
    return;
  }
  hookControls();
  redrawAll();
}

boot();
