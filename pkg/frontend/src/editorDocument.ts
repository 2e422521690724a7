/**
 * The editor's working document and its capacity rules. Exports must respect
 * the engine's observation capacities: at most 5 roads, 20 waypoints per
 * road, 15 tower points; all coordinates inside the 6x6 map square.
 */

export const MAX_ROADS = 5;
export const MAX_WAYPOINTS_PER_ROAD = 20;
export const MAX_TOWER_POINTS = 15;
export const SCHEMA_VERSION = 1;

export type Point = [number, number];

export interface TowerPointSpec {
  position: Point;
  assembly: Point;
  misleading: boolean;
}

export interface WavesSpec {
  inter_wave_interval: number;
  compositions: number[][];
}

export interface EconomySpec {
  initial_gold: number;
  max_gold: number;
  initial_base_health: number;
  refund_rate: number;
  gold_refresh_interval: number;
  gold_retention_time: number;
  gold_pickup_min: number;
  gold_pickup_max: number;
}

export interface EditorDocument {
  schema_version: number;
  kind: "editor_export";
  id: string;
  name: string;
  background: string;
  roads: Point[][];
  destination: Point;
  tower_points: TowerPointSpec[];
  hero_start: Point;
  fog_start: Point;
  waves: WavesSpec;
  economy: EconomySpec;
}

export const DEFAULT_WAVES: WavesSpec = {
  inter_wave_interval: 6.0,
  compositions: [[0, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0]],
};

export const DEFAULT_ECONOMY: EconomySpec = {
  initial_gold: 500,
  max_gold: 3000,
  initial_base_health: 20,
  refund_rate: 1.0,
  gold_refresh_interval: 2,
  gold_retention_time: 15,
  gold_pickup_min: 100,
  gold_pickup_max: 130,
};

export function newDocument(name = "edited"): EditorDocument {
  return {
    schema_version: SCHEMA_VERSION,
    kind: "editor_export",
    id: name,
    name,
    background: "grass",
    roads: [],
    destination: [3.0, 0.0],
    tower_points: [],
    hero_start: [2.0, -2.0],
    fog_start: [0.0, 1.5],
    waves: structuredClone(DEFAULT_WAVES),
    economy: structuredClone(DEFAULT_ECONOMY),
  };
}

export interface ValidationIssue {
  field: string;
  message: string;
}

const ROAD_BOUND = 3.1; // road endpoints may stage slightly off-screen

function inBounds(p: Point, bound: number): boolean {
  return Math.abs(p[0]) <= bound && Math.abs(p[1]) <= bound;
}

/** Capacity and bounds checks; an empty list means exportable. */
export function validateDocument(doc: EditorDocument): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  if (doc.roads.length === 0) {
    issues.push({ field: "roads", message: "draw at least one road" });
  }
  if (doc.roads.length > MAX_ROADS) {
    issues.push({ field: "roads", message: `at most ${MAX_ROADS} roads` });
  }
  doc.roads.forEach((road, i) => {
    if (road.length < 2) {
      issues.push({ field: `roads[${i}]`, message: "a road needs at least 2 waypoints" });
    }
    if (road.length > MAX_WAYPOINTS_PER_ROAD) {
      issues.push({
        field: `roads[${i}]`,
        message: `at most ${MAX_WAYPOINTS_PER_ROAD} waypoints per road`,
      });
    }
    road.forEach((wp, j) => {
      if (!inBounds(wp, ROAD_BOUND)) {
        issues.push({ field: `roads[${i}][${j}]`, message: "waypoint out of bounds" });
      }
    });
    if (road.length >= 2) {
      const last = road[road.length - 1];
      if (last[0] !== doc.destination[0] || last[1] !== doc.destination[1]) {
        issues.push({ field: `roads[${i}]`, message: "road must end at the destination" });
      }
    }
  });
  if (doc.tower_points.length === 0) {
    issues.push({ field: "tower_points", message: "place at least one tower point" });
  }
  if (doc.tower_points.length > MAX_TOWER_POINTS) {
    issues.push({
      field: "tower_points",
      message: `at most ${MAX_TOWER_POINTS} tower points`,
    });
  }
  doc.tower_points.forEach((tp, i) => {
    if (!inBounds(tp.position, 3.0)) {
      issues.push({ field: `tower_points[${i}]`, message: "tower point out of bounds" });
    }
    if (!inBounds(tp.assembly, 3.0)) {
      issues.push({ field: `tower_points[${i}]`, message: "assembly point out of bounds" });
    }
  });
  if (!inBounds(doc.hero_start, 3.0)) {
    issues.push({ field: "hero_start", message: "hero start out of bounds" });
  }
  if (!inBounds(doc.fog_start, 3.0)) {
    issues.push({ field: "fog_start", message: "fog start out of bounds" });
  }
  for (const [w, wave] of doc.waves.compositions.entries()) {
    if (wave.length !== 15) {
      issues.push({ field: `waves[${w}]`, message: "wave vector needs 15 slots" });
    }
    const total = wave.reduce((a, b) => a + b, 0);
    if (total === 0) {
      issues.push({ field: `waves[${w}]`, message: "wave is empty" });
    }
    if (total > 25) {
      issues.push({ field: `waves[${w}]`, message: "at most 25 enemies per wave" });
    }
  }
  return issues;
}

/** Ensures every road terminates at the shared destination. */
export function retargetRoads(doc: EditorDocument): void {
  for (const road of doc.roads) {
    if (road.length >= 1) {
      road[road.length - 1] = [doc.destination[0], doc.destination[1]];
    }
  }
}
