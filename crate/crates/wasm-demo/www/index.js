import init, { listSystems, runSuite, embedPoint, classify } from "./pkg/jtriple_wasm.js";

const SUITES = [
  "det-genus", "covariance", "addition-jp", "bergman-factorization", "quasi-det-transform",
  "domain-criterion", "lower-triangular", "fk-rank2", "c2e2", "quasi-inv-involution",
  "presentation-relations", "kernel-isometry",
];
const FAMILIES = [["mok", "Mok"], ["lie", "irrational (spin only)"], ["ft", "F_t (spin only)"]];

const $ = (id) => document.getElementById(id);

function fill(select, entries) {
  for (const [value, label] of entries) {
    const opt = document.createElement("option");
    opt.value = value;
    opt.textContent = label;
    select.append(opt);
  }
}

// "0.1+0.2i" -> [0.1, 0.2]; accepts plain reals and pure imaginaries
function parseComplex(text) {
  const s = text.replace(/\s+/g, "");
  if (s === "") throw new Error("empty coordinate");
  let re = 0;
  let im = 0;
  if (!s.endsWith("i")) {
    re = Number(s);
  } else {
    const body = s.slice(0, -1);
    // split at the last sign that is not part of an exponent
    let k = 0;
    for (let j = body.length - 1; j > 0; j--) {
      if ((body[j] === "+" || body[j] === "-") && !/[eE]/.test(body[j - 1])) {
        k = j;
        break;
      }
    }
    const imag = body.slice(k);
    re = k > 0 ? Number(body.slice(0, k)) : 0;
    im = imag === "" || imag === "+" ? 1 : imag === "-" ? -1 : Number(imag);
  }
  if (!Number.isFinite(re) || !Number.isFinite(im)) throw new Error(`bad coordinate "${text}"`);
  return [re, im];
}

const fmt = ([re, im]) => `${re.toPrecision(6)}${im >= 0 ? "+" : "-"}${Math.abs(im).toPrecision(6)}i`;

function show(id, fn) {
  try {
    $(id).textContent = fn();
  } catch (e) {
    $(id).textContent = `error: ${e}`;
  }
}

async function main() {
  await init();
  const systems = JSON.parse(listSystems());
  $("status").textContent = "";
  const table = $("systems");
  table.innerHTML = "<tr><th>system</th><th>dim</th><th>rank</th><th>a</th><th>b</th><th>genus</th><th>ball dim</th></tr>";
  for (const s of systems) {
    const row = table.insertRow();
    for (const v of [s.name, s.dim, s.rank, s.a, s.b, s.genus, s.source_dim]) row.insertCell().textContent = v;
  }
  for (const sel of document.querySelectorAll("select.system")) fill(sel, systems.map((s) => [s.name, s.name]));
  for (const sel of document.querySelectorAll("select.family")) fill(sel, FAMILIES);
  fill($("v-suite"), SUITES.map((s) => [s, s]));

  $("v-run").onclick = () => {
    $("v-verdict").textContent = "";
    show("v-out", () => {
      const json = runSuite($("v-system").value, $("v-suite").value, Number($("v-samples").value), Number($("v-seed").value));
      const r = JSON.parse(json);
      $("v-verdict").innerHTML = `<span class="${r.verdict}">${r.verdict.toUpperCase()}</span> max residual ${r.max_residual.toExponential(3)}`;
      return json;
    });
  };

  $("e-run").onclick = () =>
    show("e-out", () => {
      const point = $("e-point").value.split(",").map(parseComplex);
      const out = JSON.parse(embedPoint($("e-system").value, $("e-family").value, Number($("e-t").value), JSON.stringify(point)));
      return `F(z) = (${out.image.map(fmt).join(", ")})\nkernel residual ${out.kernel_residual.toExponential(3)}`;
    });

  $("c-run").onclick = () => show("c-out", () => classify($("c-system").value, $("c-family").value, Number($("c-t").value)));

  // keep the point length in step with the ball dimension of the chosen system
  $("e-system").onchange = () => {
    const s = systems.find((x) => x.name === $("e-system").value);
    $("e-point").value = Array.from({ length: s.source_dim }, (_, k) => (k < 3 ? (0.1 * (3 - k)).toFixed(1) : "0")).join(", ");
  };
  $("e-system").onchange();
}

main().catch((e) => {
  $("status").textContent = `failed to load: ${e}`;
});
