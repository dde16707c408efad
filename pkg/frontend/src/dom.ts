/** DOM wiring: renders taxonomy trees, the draft form, result cards, and
 * the compatibility inspector onto the static page shell. */

import { ApiClient, CompatibilityReport, TaxonomyNode } from "./api.js";
import { CandidateRow, CompatibilityInspector, GuidedSearch, InspectorView, SearchView } from "./controller.js";
import { ComparisonOp, ConceptPick, draftFromUrl } from "./query.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function must(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

class DomSearchView implements SearchView {
  renderExpression(expression: string): void {
    must("expression").textContent = expression || "(all released components)";
  }

  renderResults(rows: CandidateRow[], total: number, warnings: string[]): void {
    const list = must("results");
    list.replaceChildren();
    must("result-count").textContent = `${total} candidate${total === 1 ? "" : "s"}`;
    const warningBox = must("warnings");
    warningBox.replaceChildren(...warnings.map((w) => el("div", { class: "warning" }, w)));
    for (const row of rows) {
      const record = row.record;
      const card = el(
        "article",
        { class: "card" },
        el(
          "header",
          {},
          el("strong", {}, record.id),
          el("span", { class: `badge badge-${record.meta.status.toLowerCase()}` }, record.meta.status),
          el("span", { class: "kind" }, record.kind),
        ),
        el("p", {}, record.meta.description),
      );
      if (record.supportedDevices.length > 0) {
        card.append(
          el(
            "p",
            { class: "devices" },
            "Devices: " +
              record.supportedDevices.map((d) => `${d.manufacturer} ${d.modelName}`).join(", "),
          ),
        );
      }
      if (row.report) {
        card.append(renderChecks(row.report));
      }
      list.append(card);
    }
  }

  renderError(message: string): void {
    const list = must("results");
    list.replaceChildren(el("div", { class: "error" }, message));
    must("result-count").textContent = "";
  }
}

function renderChecks(report: CompatibilityReport): HTMLElement {
  const table = el("table", { class: "checks" });
  table.append(
    el(
      "tr",
      {},
      el("th", {}, "requirement"),
      el("th", {}, "observed"),
      el("th", {}, "verdict"),
    ),
  );
  for (const check of report.checks) {
    table.append(
      el(
        "tr",
        { class: check.verdict === "Pass" ? "pass" : "fail" },
        el("td", {}, check.constraint),
        el("td", {}, check.observed ?? check.note),
        el("td", {}, check.verdict),
      ),
    );
  }
  if (report.checks.length === 0) {
    table.append(el("tr", {}, el("td", { colspan: "3" }, "no applicable requirements")));
  }
  return table;
}

class DomInspectorView implements InspectorView {
  renderReport(report: CompatibilityReport): void {
    const box = must("inspector-result");
    const verdict = report.compatible ? "compatible" : "incompatible";
    box.replaceChildren(
      el("p", { class: report.compatible ? "pass" : "fail" }, `${report.requirer} + ${report.provider}: ${verdict}`),
      renderChecks(report),
      ...(report.skipped.length
        ? [el("p", { class: "muted" }, "not applicable: " + report.skipped.join("; "))]
        : []),
    );
  }

  renderEmptyState(message: string): void {
    must("inspector-result").replaceChildren(el("p", { class: "muted" }, message));
  }
}

function renderTaxonomy(
  container: HTMLElement,
  ontology: ConceptPick["ontology"],
  nodes: TaxonomyNode[],
  search: GuidedSearch,
): void {
  for (const node of nodes) {
    const label = el("label", { class: "pick" });
    const checkbox = el("input", { type: "checkbox" }) as HTMLInputElement;
    checkbox.checked = search.draft.selectedConcepts.some(
      (p) => p.ontology === ontology && p.name === node.name,
    );
    checkbox.addEventListener("change", () => {
      void search.toggleConcept({ ontology, name: node.name });
    });
    label.append(checkbox, ` ${node.name}`);
    if (node.children.length > 0) {
      const details = el("details", node.level === 0 ? { open: "" } : {});
      details.append(el("summary", {}, label));
      const inner = el("div", { class: "children" });
      renderTaxonomy(inner, ontology, node.children, search);
      details.append(inner);
      container.append(details);
    } else {
      container.append(el("div", { class: "leaf" }, label));
    }
  }
}

function syncCheckboxes(search: GuidedSearch): void {
  for (const box of document.querySelectorAll<HTMLInputElement>("[data-ontology] input[type=checkbox]")) {
    const label = box.parentElement?.textContent?.trim() ?? "";
    const ontology = box.closest("[data-ontology]")?.getAttribute("data-ontology") ?? "";
    box.checked = search.draft.selectedConcepts.some(
      (p) => p.ontology === ontology && p.name === label,
    );
  }
}

export async function bootstrap(baseUrl = ""): Promise<void> {
  const api = new ApiClient(baseUrl);
  const search = new GuidedSearch(api, new DomSearchView(), (urlSearch) => {
    history.replaceState(null, "", urlSearch || location.pathname);
  });
  const inspector = new CompatibilityInspector(api, new DomInspectorView());

  const taxonomies = must("taxonomies");
  for (const name of ["software", "hardware", "capability"] as const) {
    const body = await api.taxonomy(name);
    const section = el("section", { "data-ontology": name }, el("h3", {}, name));
    renderTaxonomy(section, name, body.roots, search);
    taxonomies.append(section);
  }

  const kinds = must("kinds");
  kinds.setAttribute("data-ontology", "kind");
  for (const kind of ["HAComponent", "SWComponent", "Skill"]) {
    const label = el("label", { class: "pick" });
    const checkbox = el("input", { type: "checkbox" }) as HTMLInputElement;
    checkbox.addEventListener("change", () => {
      void search.toggleConcept({ ontology: "kind", name: kind });
    });
    label.append(checkbox, ` ${kind}`);
    kinds.append(label);
  }

  (must("clause-form") as HTMLFormElement).addEventListener("submit", (event) => {
    event.preventDefault();
    const attribute = (must("clause-attribute") as HTMLInputElement).value.trim();
    const op = (must("clause-op") as HTMLSelectElement).value;
    const value = (must("clause-value") as HTMLInputElement).value.trim();
    if (!attribute) return;
    if (op === "present") {
      void search.addClause({ attribute, op });
    } else {
      void search.addClause({ attribute, op: op as ComparisonOp, value });
    }
  });

  must("manufacturer").addEventListener("change", (event) => {
    void search.setManufacturer((event.target as HTMLInputElement).value.trim());
  });
  must("model").addEventListener("change", (event) => {
    void search.setModelName((event.target as HTMLInputElement).value.trim());
  });
  must("requirer").addEventListener("change", (event) => {
    void search.setRequirer((event.target as HTMLInputElement).value.trim() || null);
  });
  must("clear").addEventListener("click", () => {
    void search.clear().then(() => syncCheckboxes(search));
  });

  (must("inspector-form") as HTMLFormElement).addEventListener("submit", (event) => {
    event.preventDefault();
    const requirer = (must("inspect-requirer") as HTMLInputElement).value.trim();
    const provider = (must("inspect-provider") as HTMLInputElement).value.trim();
    if (requirer && provider) void inspector.inspect(requirer, provider);
  });

  await search.restore(draftFromUrl(location.search));
  syncCheckboxes(search);
}
