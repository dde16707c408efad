/**
 * Query draft model: the state behind the guided-discovery form.
 *
 * The draft assembles into a DSL expression that is always parsed
 * server-side; the client never evaluates semantics. Drafts round-trip
 * through the URL so a copied address restores the exact query state.
 */

export type ComparisonOp = ">=" | ">" | "<=" | "<" | "==";

export interface ConceptPick {
  /** Which taxonomy the pick came from; decides where it lands in the expression. */
  ontology: "software" | "hardware" | "capability" | "kind";
  name: string;
}

export interface AttributeClause {
  attribute: string;
  /** "present" asks only that the attribute is declared at all. */
  op: ComparisonOp | "present";
  value?: string;
}

export interface DeviceFilter {
  manufacturer?: string;
  modelName?: string;
}

export interface QueryDraft {
  selectedConcepts: ConceptPick[];
  attributeClauses: AttributeClause[];
  deviceFilter: DeviceFilter;
}

export function emptyDraft(): QueryDraft {
  return { selectedConcepts: [], attributeClauses: [], deviceFilter: {} };
}

export function isEmptyDraft(draft: QueryDraft): boolean {
  return draft.selectedConcepts.length === 0 && draft.attributeClauses.length === 0;
}

function clauseExpression(clause: AttributeClause): string {
  if (clause.op === "present") {
    return `some(hasAttribute, ${clause.attribute})`;
  }
  return `attr(${clause.attribute}, ${clause.op}, ${clause.value ?? "0"})`;
}

function conjunction(parts: string[]): string {
  if (parts.length === 1) return parts[0];
  return `and(${parts.join(", ")})`;
}

/**
 * Builds the DSL expression. Software/kind picks become top-level
 * conjuncts; capability picks become hasCapability restrictions; hardware
 * picks open a supportsDevice block that also hosts the attribute clauses
 * (they describe the device). Without hardware picks the clauses apply to
 * the component itself.
 */
export function assembleExpression(draft: QueryDraft): string {
  const top: string[] = [];
  for (const pick of draft.selectedConcepts) {
    if (pick.ontology === "software" || pick.ontology === "kind") {
      top.push(pick.name);
    } else if (pick.ontology === "capability") {
      top.push(`some(hasCapability, ${pick.name})`);
    }
  }
  const hardware = draft.selectedConcepts.filter((p) => p.ontology === "hardware");
  const clauses = draft.attributeClauses.map(clauseExpression);
  if (hardware.length > 0) {
    const device = conjunction([...hardware.map((p) => p.name), ...clauses]);
    top.push(`some(supportsDevice, ${device})`);
  } else {
    top.push(...clauses);
  }
  if (top.length === 0) return "";
  return conjunction(top);
}

export interface QueryRequestBody {
  expression: string;
  filters: { manufacturer?: string; text?: string };
}

/** The exact POST /api/query body for a draft (the device filter's model
 * name rides the text filter, which matches device model names). */
export function queryRequestBody(draft: QueryDraft): QueryRequestBody {
  const filters: QueryRequestBody["filters"] = {};
  if (draft.deviceFilter.manufacturer) filters.manufacturer = draft.deviceFilter.manufacturer;
  if (draft.deviceFilter.modelName) filters.text = draft.deviceFilter.modelName;
  return { expression: assembleExpression(draft), filters };
}

// -- URL state ---------------------------------------------------------------

export function draftToUrl(draft: QueryDraft): string {
  const params = new URLSearchParams();
  for (const pick of draft.selectedConcepts) {
    params.append("c", `${pick.ontology}:${pick.name}`);
  }
  for (const clause of draft.attributeClauses) {
    if (clause.op === "present") {
      params.append("a", `${clause.attribute}:present`);
    } else {
      params.append("a", `${clause.attribute}:${clause.op}:${clause.value ?? ""}`);
    }
  }
  if (draft.deviceFilter.manufacturer) params.set("m", draft.deviceFilter.manufacturer);
  if (draft.deviceFilter.modelName) params.set("mo", draft.deviceFilter.modelName);
  const text = params.toString();
  return text ? `?${text}` : "";
}

const ONTOLOGIES = new Set(["software", "hardware", "capability", "kind"]);
const OPS = new Set([">=", ">", "<=", "<", "=="]);

export function draftFromUrl(search: string): QueryDraft {
  const params = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const draft = emptyDraft();
  for (const value of params.getAll("c")) {
    const colon = value.indexOf(":");
    if (colon < 1) continue;
    const ontology = value.slice(0, colon);
    const name = value.slice(colon + 1);
    if (ONTOLOGIES.has(ontology) && name) {
      draft.selectedConcepts.push({ ontology: ontology as ConceptPick["ontology"], name });
    }
  }
  for (const value of params.getAll("a")) {
    const parts = value.split(":");
    if (parts.length === 2 && parts[1] === "present" && parts[0]) {
      draft.attributeClauses.push({ attribute: parts[0], op: "present" });
    } else if (parts.length === 3 && parts[0] && OPS.has(parts[1])) {
      draft.attributeClauses.push({
        attribute: parts[0],
        op: parts[1] as ComparisonOp,
        value: parts[2],
      });
    }
  }
  const manufacturer = params.get("m");
  if (manufacturer) draft.deviceFilter.manufacturer = manufacturer;
  const modelName = params.get("mo");
  if (modelName) draft.deviceFilter.modelName = modelName;
  return draft;
}
