/**
 * Thin typed client for the registry's HTTP JSON API.
 *
 * The fetch implementation is injectable so tests can capture request
 * bodies; every verdict shown in the UI comes from these responses, never
 * from client-side reasoning.
 */

import type { QueryRequestBody } from "./query.js";

export interface ApiError {
  code: string;
  message: string;
  details?: unknown;
}

export class RequestFailed extends Error {
  constructor(
    public readonly status: number,
    public readonly error: ApiError,
  ) {
    super(`${error.code}: ${error.message}`);
  }
}

export interface ComponentRecord {
  id: string;
  kind: string;
  meta: {
    author: string;
    owner: string;
    createdAt: string;
    version: string;
    description: string;
    status: string;
  };
  swTypes: string[];
  nonTypeSpecific: {
    capabilities: string[];
    interfaces: { kind: string; direction: string; name: string; messageType: string }[];
    attributes: { attribute: string; value: string }[];
    parameters: string[];
  };
  requirements: string[];
  supportedDevices: {
    manufacturer: string;
    modelName: string;
    modelNumber: string;
    hwTypes: string[];
    attributes: { attribute: string; value: string }[];
  }[];
  hwInterfaces: { medium: string; protocol: string }[];
}

export interface QueryResponse {
  total: number;
  results: ComponentRecord[];
  warnings: string[];
}

export interface TaxonomyNode {
  name: string;
  level: number;
  capability: boolean;
  children: TaxonomyNode[];
}

export interface TaxonomyResponse {
  ontology: string;
  roots: TaxonomyNode[];
}

export interface CompatibilityCheck {
  constraint: string;
  subject: string;
  observed: string | null;
  verdict: string;
  note: string;
}

export interface CompatibilityReport {
  requirer: string;
  provider: string;
  compatible: boolean;
  checks: CompatibilityCheck[];
  skipped: string[];
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      throw new RequestFailed(response.status, body as ApiError);
    }
    return body as T;
  }

  query(body: QueryRequestBody, signal?: AbortSignal): Promise<QueryResponse> {
    return this.request<QueryResponse>("/api/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  listComponents(params: { status?: string } = {}, signal?: AbortSignal): Promise<QueryResponse> {
    const search = new URLSearchParams();
    if (params.status) search.set("status", params.status);
    const suffix = search.toString() ? `?${search}` : "";
    return this.request<QueryResponse>(`/api/components${suffix}`, { signal });
  }

  taxonomy(name: "software" | "hardware" | "capability"): Promise<TaxonomyResponse> {
    return this.request<TaxonomyResponse>(`/api/taxonomy/${name}`);
  }

  compatibility(requirer: string, provider: string): Promise<CompatibilityReport> {
    return this.request<CompatibilityReport>("/api/compatibility", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ requirer, provider }),
    });
  }
}
