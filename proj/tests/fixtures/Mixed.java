package fixtures;

import java.util.ArrayList;
import java.util.Iterator;
import java.util.List;
import java.util.function.Function;

@SuppressWarnings("unused")
public class Mixed<T extends Comparable<T>> implements Iterable<T> {
    private int a, b;
    protected static final String NAME = """
        mixed
        """;
    private final List<T> items = new ArrayList<>();

    static {
        System.out.println(NAME);
    }

    public Mixed() {
        this(0);
    }

    Mixed(int a) {
        this.a = a;
    }

    @Override
    public Iterator<T> iterator() {
        return items.iterator();
    }

    <R> R apply(Function<T, R> f, T x) {
        return f.apply(x);
    }

    int classify(int code) {
        return switch (code) {
            case 1, 2 -> code * 10;
            default -> {
                int d = code - 1;
                yield d;
            }
        };
    }

    Runnable task() {
        class Local implements Runnable {
            public void run() {
                b++;
            }
        }
        Runnable lambda = () -> a--;
        return new Runnable() {
            @Override
            public void run() {
                new Local().run();
                lambda.run();
            }
        };
    }

    interface Visitor<V> {
        V visit(Mixed<?> m);

        default void reset() {}
    }

    enum Mode {
        FAST {
            @Override
            int cost() {
                return 1;
            }
        },
        SLOW;

        int cost() {
            return 5;
        }
    }

    record Pair(String left, String right) {
        Pair {
            if (left == null) {
                throw new IllegalArgumentException();
            }
        }

        String joined() {
            return left + right;
        }
    }

    abstract static class Shape {
        abstract double area();
    }
}

final class Helper {
    static int twice(int x) {
        return x << 1;
    }
}
