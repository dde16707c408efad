/**
 * Controllers driving the two panels: guided discovery and the
 * compatibility inspector. They hold no DOM knowledge; views are
 * interfaces, so tests can script whole flows against a live server with a
 * recording view.
 */

import { ApiClient, CompatibilityReport, ComponentRecord, RequestFailed } from "./api.js";
import {
  AttributeClause,
  ConceptPick,
  QueryDraft,
  assembleExpression,
  draftToUrl,
  emptyDraft,
  isEmptyDraft,
  queryRequestBody,
} from "./query.js";

export interface CandidateRow {
  record: ComponentRecord;
  /** Pass/Fail breakdown against the selected requirer, when one is set. */
  report?: CompatibilityReport;
}

export interface SearchView {
  renderExpression(expression: string): void;
  renderResults(rows: CandidateRow[], total: number, warnings: string[]): void;
  renderError(message: string): void;
}

function sameConcept(a: ConceptPick, b: ConceptPick): boolean {
  return a.ontology === b.ontology && a.name === b.name;
}

export class GuidedSearch {
  draft: QueryDraft = emptyDraft();
  requirerId: string | null = null;
  private inflight: AbortController | null = null;
  private generation = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly view: SearchView,
    private readonly onDraftChange: (urlSearch: string) => void = () => {},
  ) {}

  restore(draft: QueryDraft): Promise<void> {
    this.draft = draft;
    return this.refresh();
  }

  toggleConcept(pick: ConceptPick): Promise<void> {
    const existing = this.draft.selectedConcepts.findIndex((p) => sameConcept(p, pick));
    if (existing >= 0) {
      this.draft.selectedConcepts.splice(existing, 1);
    } else {
      this.draft.selectedConcepts.push(pick);
    }
    return this.refresh();
  }

  addClause(clause: AttributeClause): Promise<void> {
    this.draft.attributeClauses.push(clause);
    return this.refresh();
  }

  removeClause(index: number): Promise<void> {
    this.draft.attributeClauses.splice(index, 1);
    return this.refresh();
  }

  setManufacturer(manufacturer: string): Promise<void> {
    this.draft.deviceFilter.manufacturer = manufacturer || undefined;
    return this.refresh();
  }

  setModelName(modelName: string): Promise<void> {
    this.draft.deviceFilter.modelName = modelName || undefined;
    return this.refresh();
  }

  setRequirer(recordId: string | null): Promise<void> {
    this.requirerId = recordId || null;
    return this.refresh();
  }

  clear(): Promise<void> {
    this.draft = emptyDraft();
    return this.refresh();
  }

  /** Re-issues the query; superseded requests are aborted (latest wins). */
  async refresh(): Promise<void> {
    this.onDraftChange(draftToUrl(this.draft));
    this.view.renderExpression(assembleExpression(this.draft));
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const generation = ++this.generation;
    try {
      const response = isEmptyDraft(this.draft)
        ? await this.api.listComponents({ status: "Released" }, controller.signal)
        : await this.api.query(queryRequestBody(this.draft), controller.signal);
      if (generation !== this.generation) return; // a newer edit answered already
      const rows: CandidateRow[] = [];
      for (const record of response.results) {
        if (this.requirerId && this.requirerId !== record.id) {
          rows.push({ record, report: await this.api.compatibility(this.requirerId, record.id) });
        } else {
          rows.push({ record });
        }
      }
      if (generation !== this.generation) return;
      this.view.renderResults(rows, response.total, response.warnings ?? []);
    } catch (error) {
      if (controller.signal.aborted) return;
      if (error instanceof RequestFailed) {
        this.view.renderError(`${error.error.code}: ${error.error.message}`);
      } else {
        this.view.renderError(String(error));
      }
    }
  }
}

export interface InspectorView {
  renderReport(report: CompatibilityReport): void;
  renderEmptyState(message: string): void;
}

export class CompatibilityInspector {
  constructor(
    private readonly api: ApiClient,
    private readonly view: InspectorView,
  ) {}

  async inspect(requirerId: string, providerId: string): Promise<void> {
    try {
      this.view.renderReport(await this.api.compatibility(requirerId, providerId));
    } catch (error) {
      if (error instanceof RequestFailed && error.status === 404) {
        this.view.renderEmptyState(error.error.message);
      } else {
        this.view.renderEmptyState(String(error));
      }
    }
  }
}
