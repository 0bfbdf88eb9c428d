using System;
using ShopDemo.Data;
using ShopDemo.Data.Entities;

namespace ShopDemo.Business.Catalog
{
    public class CatalogService
    {
        private ProductRepository products;

        public Product FetchProduct(int id)
        {
            var product = products.FindById(id);
            return product;
        }

        public int CountActive()
        {
            int total = products.GetCount();
            return total;
        }
    }
}
